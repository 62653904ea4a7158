"""Monadic second-order formulas for the closed drawing classes.

A graph is closed outer k-planar (k-quasi-planar) when some Hamiltonian
cycle, used as the boundary of a convex drawing, keeps every edge to at
most k crossings (keeps every k edges from mutually crossing). Both
properties are expressible with quantifiers over vertices, edges, vertex
sets and edge sets plus the four relations =, membership, subset and
incidence. This module emits those formulas fully expanded, parses and
pretty-prints the S-expression rendering, lints the primitive vocabulary,
renders a LaTeX-like form, and evaluates formulas on tiny graphs by
exhaustive enumeration of all assignments.

The S-expression grammar is documented in docs/formulas.md.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .graphs import Graph

VARIANT_ALIASES = {
    "closed-outer-planar": "closed-outer-planar",
    "closed-outer-quasi": "closed-outer-quasi",
    "closed-outer-quasi-planar": "closed-outer-quasi",
}

SORTS = ("vertex", "edge", "vertex-set", "edge-set")

# element sort of each set sort, for lint-time membership checks
_ELEM_OF = {"vertex-set": "vertex", "edge-set": "edge"}

EVAL_MAX_N = 7
EVAL_MAX_M = 10


# ---------------------------------------------------------------------------
# AST constructors. Nodes are plain tuples:
#   ("forall"|"exists", sort, name, body)
#   ("and"|"or", child, child, ...)        two or more children
#   ("not", child) ("implies", lhs, rhs)
#   ("=", a, b) ("in", x, S) ("subseteq", S, T) ("I", e, v)
# Relation arguments are variable names (strings).
# ---------------------------------------------------------------------------


def _all(*children):
    return ("and",) + children if len(children) > 1 else children[0]


def _any(*children):
    return ("or",) + children if len(children) > 1 else children[0]


def _no(child):
    return ("not", child)


def _if(lhs, rhs):
    return ("implies", lhs, rhs)


def _eq(a: str, b: str):
    return ("=", a, b)


def _ne(a: str, b: str):
    return ("not", ("=", a, b))


def _in(x: str, s: str):
    return ("in", x, s)


def _sub(s: str, t: str):
    return ("subseteq", s, t)


def _inc(e: str, v: str):
    return ("I", e, v)


def _ex(sort: str, name: str, body):
    return ("exists", sort, name, body)


def _fa(sort: str, name: str, body):
    return ("forall", sort, name, body)


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------


def _cycle_set(f: str):
    """Every vertex touched by an edge of f has exactly two f-edges at it."""
    at_u = lambda name: _all(_in(name, f), _inc(name, "u"))
    exactly_two = _ex(
        "edge",
        "f1",
        _all(
            _in("f1", f),
            _inc("f1", "u"),
            _ex(
                "edge",
                "f2",
                _all(
                    _ne("f1", "f2"),
                    _in("f2", f),
                    _inc("f2", "u"),
                    _fa("edge", "f3", _if(at_u("f3"), _any(_eq("f3", "f1"), _eq("f3", "f2")))),
                ),
            ),
        ),
    )
    return _fa("vertex", "u", _if(_ex("edge", "f0", at_u("f0")), exactly_two))


def _disconnected_edges(f: str):
    """Some nonempty proper part of f shares no vertex with the rest of f."""
    return _ex(
        "edge-set",
        "Fp",
        _all(
            _sub("Fp", f),
            _ex("edge", "f4", _in("f4", "Fp")),
            _ex("edge", "f5", _all(_in("f5", f), _no(_in("f5", "Fp")))),
            _no(
                _ex(
                    "vertex",
                    "w",
                    _ex(
                        "edge",
                        "f6",
                        _all(
                            _in("f6", "Fp"),
                            _inc("f6", "w"),
                            _ex(
                                "edge",
                                "f7",
                                _all(_in("f7", f), _no(_in("f7", "Fp")), _inc("f7", "w")),
                            ),
                        ),
                    ),
                )
            ),
        ),
    )


def _span(f: str):
    return _fa("vertex", "u", _ex("edge", "f8", _all(_in("f8", f), _inc("f8", "u"))))


def _hamiltonian(f: str):
    """f is the edge set of a spanning cycle: all degrees two, one piece,
    every vertex covered."""
    return _all(_all(_cycle_set(f), _no(_disconnected_edges(f))), _span(f))


def _disconnected_vertices(u: str, f: str):
    """Some nonempty proper w of u has no f-edge leaving w inside u."""
    return _ex(
        "vertex-set",
        "W",
        _all(
            _sub("W", u),
            _ex("vertex", "w1", _in("w1", "W")),
            _ex("vertex", "w2", _all(_in("w2", u), _no(_in("w2", "W")))),
            _no(
                _ex(
                    "edge",
                    "f9",
                    _all(
                        _in("f9", f),
                        _ex(
                            "vertex",
                            "x1",
                            _all(
                                _in("x1", "W"),
                                _inc("f9", "x1"),
                                _ex(
                                    "vertex",
                                    "x2",
                                    _all(_in("x2", u), _no(_in("x2", "W")), _inc("f9", "x2")),
                                ),
                            ),
                        ),
                    ),
                )
            ),
        ),
    )


def _connected(u: str, f: str):
    return _no(_disconnected_vertices(u, f))


def _vertex_partition(a: str, b: str, c: str):
    return _fa(
        "vertex",
        "p",
        _all(
            _any(_in("p", a), _in("p", b), _in("p", c)),
            _no(_all(_in("p", a), _in("p", b))),
            _no(_all(_in("p", a), _in("p", c))),
            _no(_all(_in("p", b), _in("p", c))),
        ),
    )


def _crossing(estar: str, e: str, ei: str):
    """Edges e and ei cross on the boundary cycle estar.

    Removing the two endpoints of e (pinned as C) cuts the cycle into two
    arcs; the quantifier asks for a split of the rest into nonempty
    boundary-connected sides A and B with no boundary edge between them,
    which forces A and B to be exactly those arcs. The pair crosses when
    ei has one endpoint on each side. The partition quantifier is
    existential: demanding the crossing for some valid split is what chord
    interleaving means, and the two arc assignments are the only splits.
    """
    pin_c = _fa("vertex", "x", _all(_if(_inc(e, "x"), _in("x", "C")), _if(_in("x", "C"), _inc(e, "x"))))
    # A away from C first: prunes the set scan before connectivity runs
    a_avoids_c = _fa("vertex", "y", _if(_in("y", "A"), _no(_in("y", "C"))))
    no_boundary_edge_between = _no(
        _ex(
            "edge",
            "f10",
            _all(
                _in("f10", estar),
                _ex(
                    "vertex",
                    "x3",
                    _all(
                        _in("x3", "A"),
                        _inc("f10", "x3"),
                        _ex("vertex", "x4", _all(_in("x4", "B"), _inc("f10", "x4"))),
                    ),
                ),
            ),
        )
    )
    ei_splits = _ex(
        "vertex",
        "a2",
        _all(
            _in("a2", "A"),
            _inc(ei, "a2"),
            _ex("vertex", "b2", _all(_in("b2", "B"), _inc(ei, "b2"))),
        ),
    )
    inner_b = _ex(
        "vertex-set",
        "B",
        _all(
            _vertex_partition("A", "B", "C"),
            _ex("vertex", "b1", _in("b1", "B")),
            _connected("B", estar),
            no_boundary_edge_between,
            ei_splits,
        ),
    )
    inner_a = _ex(
        "vertex-set",
        "A",
        _all(a_avoids_c, _ex("vertex", "a1", _in("a1", "A")), _connected("A", estar), inner_b),
    )
    return _ex("vertex-set", "C", _all(pin_c, inner_a))


def _planar_body(k: int):
    names = [f"e{i}" for i in range(1, k + 2)]
    hyp = _all(
        *[_ne(x, "e") for x in names],
        *[_ne(x, y) for x, y in combinations(names, 2)],
    )
    disj = _any(*[_no(_crossing("Estar", "e", x)) for x in names])
    body = _if(hyp, disj)
    for x in reversed(names):
        body = _fa("edge", x, body)
    return _fa("edge", "e", body)


def _quasi_body(k: int):
    names = [f"e{i}" for i in range(1, k + 1)]
    hyp = _all(*[_ne(x, y) for x, y in combinations(names, 2)])
    disj = _any(*[_no(_crossing("Estar", x, y)) for x, y in combinations(names, 2)])
    body = _if(hyp, disj)
    for x in reversed(names):
        body = _fa("edge", x, body)
    return body


@dataclass(frozen=True)
class EmittedFormula:
    """A class formula in both renderings, plus the AST it came from."""

    k: int
    variant: str
    sexpr: str
    latex: str
    ast: tuple = field(repr=False, compare=False, default=())

    def to_dict(self) -> dict:
        return {"k": self.k, "variant": self.variant, "sexpr": self.sexpr, "latex": self.latex}


def emit_formula(k: int, variant: str) -> EmittedFormula:
    """Build the closed-class formula for (k, variant), fully expanded.

    The planar variant needs k >= 1 and quantifies an edge e plus k+1
    distinct others, at least one of which must not cross e; the quasi
    variant needs k >= 2 and quantifies k distinct edges, at least one
    pair of which must not cross.
    """
    canon = VARIANT_ALIASES.get(variant)
    if canon is None:
        raise ValueError(f"unknown variant {variant!r}")
    if canon == "closed-outer-planar":
        if k < 1:
            raise ValueError(f"closed-outer-planar needs k >= 1, got {k}")
        body = _planar_body(k)
    else:
        if k < 2:
            raise ValueError(f"closed-outer-quasi needs k >= 2, got {k}")
        body = _quasi_body(k)
    ast = _ex("edge-set", "Estar", _all(_hamiltonian("Estar"), body))
    return EmittedFormula(k=k, variant=canon, sexpr=to_sexpr(ast), latex=to_latex(ast), ast=ast)


# ---------------------------------------------------------------------------
# S-expression rendering and parsing
# ---------------------------------------------------------------------------

_QUANT = ("forall", "exists")
_RELS = ("=", "in", "subseteq", "I")


def _is_leaf_line(node) -> bool:
    if node[0] in _RELS:
        return True
    return node[0] == "not" and node[1][0] in _RELS


def _leaf_str(node) -> str:
    if node[0] == "not":
        return f"(not {_leaf_str(node[1])})"
    return "(" + " ".join(node) + ")"


def to_sexpr(node, indent: int = 0) -> str:
    """Deterministic pretty-printer; parse(to_sexpr(ast)) == ast."""
    pad = "  " * indent
    if _is_leaf_line(node):
        return pad + _leaf_str(node)
    head = node[0]
    if head in _QUANT:
        body = to_sexpr(node[3], indent + 1)
        return f"{pad}({head} {node[1]} {node[2]}\n{body})"
    if head in ("and", "or"):
        parts = "\n".join(to_sexpr(c, indent + 1) for c in node[1:])
        return f"{pad}({head}\n{parts})"
    if head == "implies":
        lhs = to_sexpr(node[1], indent + 1)
        rhs = to_sexpr(node[2], indent + 1)
        return f"{pad}(implies\n{lhs}\n{rhs})"
    if head == "not":
        return f"{pad}(not\n{to_sexpr(node[1], indent + 1)})"
    raise ValueError(f"unknown node head {head!r}")


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    cur = []
    for ch in text:
        if ch in "()":
            if cur:
                out.append("".join(cur))
                cur = []
            out.append(ch)
        elif ch.isspace():
            if cur:
                out.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur))
    return out


def parse_sexpr(text: str) -> tuple:
    """Parse one S-expression formula into the tuple AST."""
    tokens = _tokenize(text)
    pos = 0

    def parse_node() -> tuple:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos}")
        pos += 1
        if pos >= len(tokens):
            raise ValueError("unexpected end of input")
        head = tokens[pos]
        pos += 1
        if head in _QUANT:
            if pos + 1 >= len(tokens):
                raise ValueError(f"truncated {head}")
            sort, name = tokens[pos], tokens[pos + 1]
            pos += 2
            body = parse_node()
            node = (head, sort, name, body)
        elif head in ("and", "or"):
            children = []
            while pos < len(tokens) and tokens[pos] == "(":
                children.append(parse_node())
            if len(children) < 2:
                raise ValueError(f"{head} needs at least two children")
            node = (head,) + tuple(children)
        elif head == "not":
            node = ("not", parse_node())
        elif head == "implies":
            node = ("implies", parse_node(), parse_node())
        elif head in _RELS:
            if pos + 1 >= len(tokens):
                raise ValueError(f"truncated {head}")
            node = (head, tokens[pos], tokens[pos + 1])
            pos += 2
        else:
            raise ValueError(f"unknown head {head!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError(f"expected ')' at token {pos}")
        pos += 1
        return node

    node = parse_node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after formula")
    return node


# ---------------------------------------------------------------------------
# LaTeX-like rendering
# ---------------------------------------------------------------------------

_LATEX_NAMES = {"Estar": "E^{*}", "Fp": "F'"}


def _latex_var(name: str) -> str:
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    base = name.rstrip("0123456789")
    if base != name and base:
        return f"{base}_{{{name[len(base):]}}}"
    return name


def _latex_atom(node) -> str | None:
    head = node[0]
    if head == "=":
        return f"{_latex_var(node[1])} = {_latex_var(node[2])}"
    if head == "in":
        return f"{_latex_var(node[1])} \\in {_latex_var(node[2])}"
    if head == "subseteq":
        return f"{_latex_var(node[1])} \\subseteq {_latex_var(node[2])}"
    if head == "I":
        return f"I({_latex_var(node[1])}, {_latex_var(node[2])})"
    if head == "not" and node[1][0] == "=":
        return f"{_latex_var(node[1][1])} \\neq {_latex_var(node[1][2])}"
    return None


def to_latex(node) -> str:
    atom = _latex_atom(node)
    if atom is not None:
        return atom
    head = node[0]
    if head in _QUANT:
        sym = "\\forall" if head == "forall" else "\\exists"
        names = [node[2]]
        body = node[3]
        while body[0] == head:
            names.append(body[2])
            body = body[3]
        quant = f"({sym} {', '.join(_latex_var(x) for x in names)})"
        return f"{quant}[{to_latex(body)}]"
    if head in ("and", "or"):
        sym = " \\wedge " if head == "and" else " \\vee "
        return sym.join(_latex_wrap(c) for c in node[1:])
    if head == "implies":
        return f"{_latex_wrap(node[1])} \\rightarrow {_latex_wrap(node[2])}"
    if head == "not":
        return f"\\neg {_latex_wrap(node[1])}"
    raise ValueError(f"unknown node head {head!r}")


def _latex_wrap(node) -> str:
    atom = _latex_atom(node)
    if atom is not None:
        return atom
    if node[0] in _QUANT:
        return to_latex(node)
    return f"({to_latex(node)})"


# ---------------------------------------------------------------------------
# Primitive lint
# ---------------------------------------------------------------------------


def lint_formula(node) -> list[str]:
    """Check the AST stays inside the primitive vocabulary.

    Allowed: quantifiers over the four sorts, the four relations with
    sort-correct arguments, the four connectives, every variable bound by
    an enclosing quantifier. Returns a list of violations, empty if clean.
    """
    out: list[str] = []

    def var_sort(scope: dict, name: str, want: tuple, where: str):
        got = scope.get(name)
        if got is None:
            out.append(f"unbound variable {name!r} in {where}")
        elif got not in want:
            out.append(f"{where}: {name!r} has sort {got}, wanted one of {want}")

    def walk(n, scope: dict):
        if not isinstance(n, tuple) or not n:
            out.append(f"malformed node {n!r}")
            return
        head = n[0]
        if head in _QUANT:
            if len(n) != 4:
                out.append(f"{head} arity {len(n) - 1}")
                return
            if n[1] not in SORTS:
                out.append(f"unknown sort {n[1]!r}")
                return
            walk(n[3], {**scope, n[2]: n[1]})
        elif head in ("and", "or"):
            if len(n) < 3:
                out.append(f"{head} with {len(n) - 1} children")
            for c in n[1:]:
                walk(c, scope)
        elif head == "not":
            if len(n) != 2:
                out.append("not arity != 1")
                return
            walk(n[1], scope)
        elif head == "implies":
            if len(n) != 3:
                out.append("implies arity != 2")
                return
            walk(n[1], scope)
            walk(n[2], scope)
        elif head == "=":
            var_sort(scope, n[1], ("vertex", "edge"), "=")
            var_sort(scope, n[2], ("vertex", "edge"), "=")
            if scope.get(n[1]) and scope.get(n[2]) and scope[n[1]] != scope[n[2]]:
                out.append(f"= compares {scope[n[1]]} with {scope[n[2]]}")
        elif head == "in":
            s = scope.get(n[2])
            var_sort(scope, n[2], ("vertex-set", "edge-set"), "in")
            if s in _ELEM_OF:
                var_sort(scope, n[1], (_ELEM_OF[s],), "in")
            else:
                var_sort(scope, n[1], ("vertex", "edge"), "in")
        elif head == "subseteq":
            var_sort(scope, n[1], ("vertex-set", "edge-set"), "subseteq")
            var_sort(scope, n[2], ("vertex-set", "edge-set"), "subseteq")
            if scope.get(n[1]) and scope.get(n[2]) and scope[n[1]] != scope[n[2]]:
                out.append(f"subseteq mixes {scope[n[1]]} and {scope[n[2]]}")
        elif head == "I":
            var_sort(scope, n[1], ("edge",), "I")
            var_sort(scope, n[2], ("vertex",), "I")
        else:
            out.append(f"unknown head {head!r}")

    walk(node, {})
    return out


# ---------------------------------------------------------------------------
# Finite-model evaluation
# ---------------------------------------------------------------------------


def _free_names(node, cache: dict) -> frozenset:
    got = cache.get(id(node))
    if got is not None:
        return got
    head = node[0]
    if head in _QUANT:
        res = _free_names(node[3], cache) - {node[2]}
    elif head in _RELS:
        res = frozenset((node[1], node[2]))
    else:
        res = frozenset().union(*(_free_names(c, cache) for c in node[1:]))
    cache[id(node)] = res
    return res


def _shape_key(node, rename: dict) -> tuple:
    """Structural key with free names replaced positionally, so the memo is
    shared between the per-disjunct copies of the same subformula."""
    head = node[0]
    if head in _QUANT:
        inner = {k: v for k, v in rename.items() if k != node[2]}
        return (head, node[1], node[2], _shape_key(node[3], inner))
    if head in _RELS:
        return (head, rename.get(node[1], node[1]), rename.get(node[2], node[2]))
    return (head,) + tuple(_shape_key(c, rename) for c in node[1:])


class _Compiled:
    """Compiles an AST into nested closures over one shared environment.

    Vertices are 0..n-1; edges are indexed into g.edges; sets are bitmasks.
    Set-sorted quantifier nodes memoize on the values of their free
    variables, keyed structurally so identical subformulas share a table.
    """

    def __init__(self, g: Graph):
        self.n = g.n
        self.m = g.m
        self.inc_mask = [1 << u | 1 << v for u, v in g.edges]
        self.domains = {
            "vertex": range(g.n),
            "edge": range(g.m),
            "vertex-set": range(1 << g.n),
            "edge-set": range(1 << g.m),
        }
        self.nslots = 0
        self.free_cache: dict = {}
        self.memo: dict = {}

    def compile(self, node) -> Callable:
        fn = self._build(node, {})
        env = [0] * self.nslots
        return lambda: fn(env)

    def _build(self, node, scope: dict) -> Callable:
        head = node[0]
        if head in _QUANT:
            slot = self.nslots
            self.nslots += 1
            body = self._build(node[3], {**scope, node[2]: slot})
            dom = self.domains[node[1]]
            want = head == "exists"
            if node[1] in _ELEM_OF:  # set sort: memoize on free-variable values
                free = sorted(_free_names(node, self.free_cache))
                key_slots = [scope[x] for x in free]
                skey = repr(_shape_key(node, {x: f"%{i}" for i, x in enumerate(free)}))
                memo = self.memo

                def ev(env, slot=slot, dom=dom, body=body, want=want, ks=key_slots, skey=skey, memo=memo):
                    key = (skey,) + tuple(env[s] for s in ks)
                    hit = memo.get(key)
                    if hit is None:
                        hit = not want
                        for val in dom:
                            env[slot] = val
                            if body(env) == want:
                                hit = want
                                break
                        memo[key] = hit
                    return hit

                return ev

            def ev(env, slot=slot, dom=dom, body=body, want=want):
                for val in dom:
                    env[slot] = val
                    if body(env) == want:
                        return want
                return not want

            return ev
        if head == "and":
            cs = tuple(self._build(c, scope) for c in node[1:])

            def ev_and(env, cs=cs):
                for c in cs:
                    if not c(env):
                        return False
                return True

            return ev_and
        if head == "or":
            cs = tuple(self._build(c, scope) for c in node[1:])

            def ev_or(env, cs=cs):
                for c in cs:
                    if c(env):
                        return True
                return False

            return ev_or
        if head == "not":
            c = self._build(node[1], scope)
            return lambda env, c=c: not c(env)
        if head == "implies":
            a = self._build(node[1], scope)
            b = self._build(node[2], scope)
            return lambda env, a=a, b=b: (not a(env)) or b(env)
        sa, sb = scope[node[1]], scope[node[2]]
        if head == "=":
            return lambda env, sa=sa, sb=sb: env[sa] == env[sb]
        if head == "in":
            return lambda env, sa=sa, sb=sb: (env[sb] >> env[sa]) & 1 == 1
        if head == "subseteq":
            return lambda env, sa=sa, sb=sb: env[sa] & ~env[sb] == 0
        if head == "I":
            inc = self.inc_mask
            return lambda env, sa=sa, sb=sb, inc=inc: (inc[env[sa]] >> env[sb]) & 1 == 1
        raise ValueError(f"unknown node head {head!r}")


def evaluate_formula(formula, g: Graph) -> bool:
    """Evaluate a closed formula on g by exhaustive enumeration.

    Doubly exponential; refuses models beyond n <= 7, m <= 10. The only
    purpose is certifying that emitted text means what it should.
    """
    ast = formula.ast if isinstance(formula, EmittedFormula) else formula
    if g.n > EVAL_MAX_N:
        raise ValueError(f"evaluator cap n <= {EVAL_MAX_N}, got n={g.n}")
    if g.m > EVAL_MAX_M:
        raise ValueError(f"evaluator cap m <= {EVAL_MAX_M}, got m={g.m}")
    if _free_names(ast, {}):
        raise ValueError("formula has free variables")
    return _Compiled(g).compile(ast)()


def sanity_check_semantics(g: Graph, k: int, variant: str) -> bool:
    """Truth of the emitted (k, variant) formula on g, by brute force."""
    return evaluate_formula(emit_formula(k, variant), g)
