"""First-order formulas over colored posets: parsing, normal form, structural queries.

Surface syntax is plain ASCII, e.g.

    E x. A y. (x <= y | red(y)) -> E z. !(z = x)

``E``/``A`` are the existential/universal quantifiers; ``&``, ``|``, ``!`` the
connectives; ``->`` and ``<->`` are sugar expanded at parse time.  A unary
predicate application ``red(x)`` is a color test; ``edge(x, y)`` is the single
binary predicate, used by graph sentences (see interval.py) and rejected by the
poset engines.  Precedence, tightest first: ``!``, ``&``, ``|``, ``->``, ``<->``;
a quantifier's body extends as far right as possible, so quantifiers inside a
binary expression must be parenthesized.

The parser renames bound variables apart: in a returned formula no name is
bound twice along a path and bound names never collide with free names.
"""

import re

#: Color assigned to elements that carry no explicit color.
DEFAULT_COLOR = "_"


class FormulaError(Exception):
    pass


class ParseError(FormulaError):
    def __init__(self, message, line, column):
        super().__init__("%d:%d: %s" % (line, column, message))
        self.line = line
        self.column = column


class FreeVariableError(FormulaError):
    pass


class Formula:
    """Base class for formula nodes; immutable, compared structurally."""

    _key = None
    _hash = None

    def _make_key(self):
        raise NotImplementedError

    def key(self):
        if self._key is None:
            self._key = self._make_key()
        return self._key

    def __eq__(self, other):
        return self is other or (isinstance(other, Formula) and self.key() == other.key())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return to_text(self)


class Atom(Formula):
    pass


class LessEq(Atom):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _make_key(self):
        return ("<=", self.left, self.right)


class Eq(Atom):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _make_key(self):
        return ("=", self.left, self.right)


class Color(Atom):
    def __init__(self, color, var):
        self.color = color
        self.var = var

    def _make_key(self):
        return ("color", self.color, self.var)


class Edge(Atom):
    """Graph-vocabulary adjacency atom; only meaningful for graph sentences."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _make_key(self):
        return ("edge", self.left, self.right)


class Not(Formula):
    """Negation.  After to_nnf the body is always an atom."""

    def __init__(self, body):
        self.body = body

    def _make_key(self):
        return ("!", self.body.key())


class And(Formula):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _make_key(self):
        return ("&", self.left.key(), self.right.key())


class Or(Formula):
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def _make_key(self):
        return ("|", self.left.key(), self.right.key())


class Exists(Formula):
    def __init__(self, var, body):
        self.var = var
        self.body = body

    def _make_key(self):
        return ("E", self.var, self.body.key())


class Forall(Formula):
    def __init__(self, var, body):
        self.var = var
        self.body = body

    def _make_key(self):
        return ("A", self.var, self.body.key())


_QUANTIFIERS = (Exists, Forall)
_BINARY = (And, Or)

# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(r"(<->|->|<=|=|&|\||!|\(|\)|\.|,)|([A-Za-z_][A-Za-z0-9_]*)|(\s+)|(.)")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind  # "op" | "name" | "end"
        self.text = text
        self.pos = pos


def _tokenize(text):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        op, name, space, bad = m.groups()
        if space is not None:
            continue
        if bad is not None:
            raise ParseError("unknown token %r" % bad, *_line_col(text, m.start()))
        if op is not None:
            tokens.append(_Token("op", op, m.start()))
        else:
            tokens.append(_Token("name", name, m.start()))
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, *_line_col(self.text, tok.pos))

    def eat_op(self, text):
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            self.i += 1
            return True
        return False

    def expect_op(self, text):
        if not self.eat_op(text):
            self.fail("expected %r" % text)

    def expect_name(self, what="identifier"):
        tok = self.peek()
        if tok.kind != "name":
            self.fail("expected %s" % what)
        return self.advance()

    def at_quantifier(self):
        tok = self.peek()
        return tok.kind == "name" and tok.text in ("E", "A")

    def formula(self):
        if self.at_quantifier():
            return self.quantifier()
        return self.iff()

    def quantifier(self):
        q = self.advance()
        var = self.expect_name("variable")
        if var.text in ("E", "A"):
            self.fail("'%s' is a reserved quantifier symbol" % var.text, var)
        self.expect_op(".")
        body = self.formula()
        return (Exists if q.text == "E" else Forall)(var.text, body)

    def iff(self):
        f = self.impl()
        while self.eat_op("<->"):
            g = self.impl()
            f = And(Or(Not(f), g), Or(Not(g), f))
        return f

    def impl(self):
        f = self.disj()
        if self.eat_op("->"):
            return Or(Not(f), self.impl())
        return f

    def disj(self):
        f = self.conj()
        while self.eat_op("|"):
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.eat_op("&"):
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.eat_op("!"):
            return Not(self.unary())
        if self.eat_op("("):
            f = self.formula()
            self.expect_op(")")
            return f
        if self.at_quantifier():
            self.fail("quantifier inside a binary expression must be parenthesized")
        return self.atom()

    def atom(self):
        name = self.expect_name("atom")
        if self.eat_op("("):
            args = [self.expect_name("variable").text]
            while self.eat_op(","):
                args.append(self.expect_name("variable").text)
            self.expect_op(")")
            if len(args) == 1:
                if name.text == "edge":
                    self.fail("edge is a binary predicate", name)
                return Color(name.text, args[0])
            if len(args) == 2 and name.text == "edge":
                return Edge(args[0], args[1])
            self.fail("only unary color predicates and edge(x, y) are allowed", name)
        if self.eat_op("<="):
            return LessEq(name.text, self.expect_name("variable").text)
        if self.eat_op("="):
            return Eq(name.text, self.expect_name("variable").text)
        self.fail("expected '<=', '=' or a predicate application")


def parse(text: str) -> Formula:
    """Parse a formula; ``->``/``<->`` are desugared and binders renamed apart."""
    parser = _Parser(text)
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "end":
        parser.fail("unexpected trailing input")
    return _rename_apart(f)


def _rename_apart(f):
    used = set(free_variables(f))

    def fresh(name):
        pick = name
        k = 2
        while pick in used:
            pick = "%s_%d" % (name, k)
            k += 1
        used.add(pick)
        return pick

    def walk(node, env):
        if isinstance(node, _QUANTIFIERS):
            name = fresh(node.var)
            return type(node)(name, walk(node.body, {**env, node.var: name}))
        if isinstance(node, _BINARY):
            return type(node)(walk(node.left, env), walk(node.right, env))
        if isinstance(node, Not):
            return Not(walk(node.body, env))
        if isinstance(node, Color):
            return Color(node.color, env.get(node.var, node.var))
        if isinstance(node, (LessEq, Eq, Edge)):
            return type(node)(env.get(node.left, node.left), env.get(node.right, node.right))
        raise TypeError(node)

    return walk(f, {})


# ---------------------------------------------------------------------------
# printing

def _prec(f):
    if isinstance(f, _QUANTIFIERS):
        return 0
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    return 3


def to_text(f: Formula) -> str:
    """Render a formula in the concrete syntax accepted by parse()."""
    if isinstance(f, Exists):
        return "E %s. %s" % (f.var, to_text(f.body))
    if isinstance(f, Forall):
        return "A %s. %s" % (f.var, to_text(f.body))
    if isinstance(f, _BINARY):
        sym = "&" if isinstance(f, And) else "|"
        here = _prec(f)
        left = to_text(f.left)
        if _prec(f.left) < here:
            left = "(%s)" % left
        right = to_text(f.right)
        if _prec(f.right) <= here:  # reassociation guard
            right = "(%s)" % right
        return "%s %s %s" % (left, sym, right)
    if isinstance(f, Not):
        body = to_text(f.body)
        if not isinstance(f.body, (Color, Edge)):
            body = "(%s)" % body
        return "!%s" % body
    if isinstance(f, LessEq):
        return "%s <= %s" % (f.left, f.right)
    if isinstance(f, Eq):
        return "%s = %s" % (f.left, f.right)
    if isinstance(f, Color):
        return "%s(%s)" % (f.color, f.var)
    if isinstance(f, Edge):
        return "edge(%s, %s)" % (f.left, f.right)
    raise TypeError(f)


# ---------------------------------------------------------------------------
# structural queries

def to_nnf(f: Formula) -> Formula:
    """Negation normal form: push negations down to the atoms (linear size)."""
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Atom):
            return f
        if isinstance(g, Not):
            return to_nnf(g.body)
        if isinstance(g, And):
            return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Or):
            return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Exists):
            return Forall(g.var, to_nnf(Not(g.body)))
        if isinstance(g, Forall):
            return Exists(g.var, to_nnf(Not(g.body)))
        raise TypeError(g)
    if isinstance(f, _BINARY):
        return type(f)(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, _QUANTIFIERS):
        return type(f)(f.var, to_nnf(f.body))
    return f


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Not):
        return isinstance(f.body, Atom)
    if isinstance(f, _BINARY):
        return is_nnf(f.left) and is_nnf(f.right)
    if isinstance(f, _QUANTIFIERS):
        return is_nnf(f.body)
    return isinstance(f, Atom)


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, _QUANTIFIERS):
        return 1 + quantifier_rank(f.body)
    if isinstance(f, _BINARY):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    return 0


def atom_variables(f: Atom):
    if isinstance(f, Color):
        return (f.var,)
    return (f.left, f.right) if f.left != f.right else (f.left,)


def free_variables(f: Formula):
    """Free variables of f, ordered by first occurrence."""
    out = []

    def walk(node, bound):
        if isinstance(node, Atom):
            for v in atom_variables(node):
                if v not in bound and v not in out:
                    out.append(v)
        elif isinstance(node, Not):
            walk(node.body, bound)
        elif isinstance(node, _BINARY):
            walk(node.left, bound)
            walk(node.right, bound)
        else:
            walk(node.body, bound | {node.var})

    walk(f, frozenset())
    return tuple(out)


def game_children(f: Formula):
    """Children as seen by the evaluation game; a negated atom is a leaf."""
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, _QUANTIFIERS):
        return (f.body,)
    return ()


def subformula_positions(f: Formula):
    """Preorder list of (subformula occurrence, ordered free variables)."""
    out = []

    def walk(node):
        out.append((node, free_variables(node)))
        for child in game_children(node):
            walk(child)

    walk(f)
    return out


def ensure_sentence(f: Formula):
    fv = free_variables(f)
    if fv:
        raise FreeVariableError("free variable '%s' in sentence" % fv[0])


def colors_in(f: Formula):
    out = set()

    def walk(node):
        if isinstance(node, Color):
            out.add(node.color)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, _BINARY):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, _QUANTIFIERS):
            walk(node.body)

    walk(f)
    return out


def uses_edge(f: Formula) -> bool:
    if isinstance(f, Edge):
        return True
    if isinstance(f, Not):
        return uses_edge(f.body)
    if isinstance(f, _BINARY):
        return uses_edge(f.left) or uses_edge(f.right)
    if isinstance(f, _QUANTIFIERS):
        return uses_edge(f.body)
    return False


class ColorSet:
    """Ordered color alphabet; always contains the default color."""

    def __init__(self, names=()):
        extra = sorted(set(names) - {DEFAULT_COLOR})
        self.names = (DEFAULT_COLOR, *extra)

    @classmethod
    def for_check(cls, f, poset):
        return cls(colors_in(f) | set(poset.colors))

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.names

    def __repr__(self):
        return "ColorSet(%s)" % ", ".join(self.names)


# ---------------------------------------------------------------------------
# random sentences (test and benchmark fodder)

def random_sentence(rng, rank, colors=(), vocabulary="poset", negations="atomic",
                    leaf_width=3) -> Formula:
    """Random closed formula of quantifier rank exactly ``rank`` (>= 1).

    ``negations="atomic"`` yields a formula already in negation normal form;
    ``"any"`` sprinkles negations over compound subformulas as well.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    colors = tuple(colors)

    def leaf(scope):
        x = rng.choice(scope)
        y = rng.choice(scope)
        if vocabulary == "graph":
            atom = Edge(x, y) if rng.random() < 0.7 else Eq(x, y)
        else:
            roll = rng.random()
            if colors and roll < 0.3:
                atom = Color(rng.choice(colors), x)
            elif roll < 0.75:
                atom = LessEq(x, y)
            else:
                atom = Eq(x, y)
        if rng.random() < 0.4:
            atom = Not(atom)
        return atom

    def boolean(scope, size):
        if size <= 1:
            return leaf(scope)
        node = (And if rng.random() < 0.5 else Or)(
            boolean(scope, size // 2), boolean(scope, size - size // 2))
        if negations == "any" and rng.random() < 0.3:
            node = Not(node)
        return node

    def gen(budget, scope):
        if budget == 0:
            return boolean(scope, rng.randint(1, leaf_width))
        if scope and rng.random() < 0.3:
            # combine; one operand keeps the full budget so the rank is exact
            a = gen(budget, scope)
            b = gen(rng.randint(0, budget - 1), scope) if rng.random() < 0.5 \
                else boolean(scope, rng.randint(1, leaf_width))
            pair = [a, b]
            rng.shuffle(pair)
            return (And if rng.random() < 0.5 else Or)(*pair)
        var = "x%d" % len(scope)
        body = gen(budget - 1, scope + [var])
        return (Exists if rng.random() < 0.5 else Forall)(var, body)

    # round-trip through the printer to get renamed-apart binders
    return parse(to_text(gen(rank, [])))
