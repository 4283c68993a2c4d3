"""Extended quivers, mutation rules, seeds and exchange-graph exploration.

An extended quiver couples a classical skew-symmetric arrow matrix B on the
even vertices with one skew-symmetric net 2-path matrix N_k per even vertex:
N_k[i][j] > 0 counts 2-paths xi_i -> x_k -> xi_j.  Storing net counts makes
the cancellation rule automatic and path reversal a sign flip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .superring import (
    NotDivisibleError,
    SuperPolynomial,
    SuperRational,
    exact_div,
    generators,
    render,
)


class QuiverError(ValueError):
    """Malformed quiver data."""


class FrozenVertexError(ValueError):
    """Mutation requested at a frozen vertex."""


class MutationForbiddenError(ValueError):
    """Mutation would break Condition C and was not forced."""


class ConditionCViolatedError(ValueError):
    """Operation needs Condition C at a vertex where it fails."""


class MultiplicityOutOfRangeError(ValueError):
    """Lemma oracle requires 2-path multiplicities in {-1, 0, 1}."""


class NonLaurentError(ArithmeticError):
    """Exchange produced a non-Laurent label; impossible on allowed paths."""


class ZeroBodyDenominatorError(ZeroDivisionError):
    """Rational mutation hit a label with zero classical part."""


def _skew_ok(mat):
    size = len(mat)
    return all(len(row) == size for row in mat) and all(
        mat[i][j] == -mat[j][i] for i in range(size) for j in range(size)
    )


@dataclass(frozen=True)
class ExtendedQuiver:
    n: int
    m: int
    B: tuple
    N: tuple
    frozen: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        B = tuple(tuple(int(v) for v in row) for row in self.B)
        N = tuple(tuple(tuple(int(v) for v in row) for row in mat) for mat in self.N)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        if len(B) != self.n or not _skew_ok(B):
            raise QuiverError("B must be a skew-symmetric n x n integer matrix")
        if len(N) != self.n:
            raise QuiverError("need one 2-path matrix per even vertex")
        for k, mat in enumerate(N):
            if len(mat) != self.m or not _skew_ok(mat):
                raise QuiverError(f"N[{k}] must be a skew-symmetric m x m matrix")
        if any(not (0 <= v < self.n) for v in self.frozen):
            raise QuiverError("frozen vertex index out of range")

    # -- Condition C -------------------------------------------------------

    def rectangle(self, k):
        """Decompose N_k as t * 1_{I x J}; returns (t, I, J) or None.

        The zero matrix decomposes as (0, (), ()).  None signals a Condition C
        violation at vertex k.
        """
        pos = [
            (i, j, v)
            for i, row in enumerate(self.N[k])
            for j, v in enumerate(row)
            if v > 0
        ]
        if not pos:
            return 0, (), ()
        I = tuple(sorted({i for i, _, _ in pos}))
        J = tuple(sorted({j for _, j, _ in pos}))
        if set(I) & set(J):
            return None
        t = pos[0][2]
        if len(pos) != len(I) * len(J) or any(v != t for _, _, v in pos):
            return None
        return t, I, J

    def validate(self):
        """List human-readable Condition C violations; empty means valid."""
        violations = []
        for k in range(self.n):
            if self.rectangle(k) is None:
                violations.append(
                    f"vertex {k}: 2-paths do not form a uniform complete "
                    f"bipartite family (Condition C)"
                )
        return violations

    def is_valid(self):
        return not self.validate()

    # -- mutation ----------------------------------------------------------

    def mutate(self, k):
        """Mutate at even vertex k: classical B rule plus the 2-path rules.

        2-paths through k are copied onto every head of an outgoing arrow
        (with arrow multiplicity) and then reversed at k; opposite paths
        cancel inside the net matrices.  The result may violate Condition C.
        """
        if k in self.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        if not (0 <= k < self.n):
            raise QuiverError(f"vertex {k} out of range")
        n = self.n
        B = self.B
        newB = [
            [
                -B[i][j]
                if k in (i, j)
                else B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
                for j in range(n)
            ]
            for i in range(n)
        ]
        newN = []
        for l in range(n):
            if l == k:
                newN.append(tuple(tuple(-v for v in row) for row in self.N[k]))
            elif B[k][l] > 0:
                mult = B[k][l]
                newN.append(
                    tuple(
                        tuple(
                            self.N[l][i][j] + mult * self.N[k][i][j]
                            for j in range(self.m)
                        )
                        for i in range(self.m)
                    )
                )
            else:
                newN.append(self.N[l])
        return ExtendedQuiver(n, self.m, tuple(map(tuple, newB)), tuple(newN), self.frozen)

    def is_allowed(self, k):
        """True iff mutation at k keeps Condition C everywhere."""
        if k in self.frozen:
            return False
        return self.mutate(k).is_valid()

    # -- arrows ------------------------------------------------------------

    def outgoing(self, k):
        return [(j, self.B[k][j]) for j in range(self.n) if self.B[k][j] > 0]

    def incoming(self, k):
        return [(i, self.B[i][k]) for i in range(self.n) if self.B[i][k] > 0]

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "B": [list(row) for row in self.B],
            "N": [[list(row) for row in mat] for mat in self.N],
            "frozen": sorted(self.frozen),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            n=int(data["n"]),
            m=int(data["m"]),
            B=tuple(tuple(int(v) for v in row) for row in data["B"]),
            N=tuple(
                tuple(tuple(int(v) for v in row) for row in mat) for mat in data["N"]
            ),
            frozen=frozenset(int(v) for v in data.get("frozen", [])),
        )

    def to_dot(self):
        """DOT export: even vertices as boxes, odd as red circles, 2-paths
        as arrow pairs sharing a path group attribute."""
        lines = ["digraph extended_quiver {"]
        for i in range(self.n):
            shape = "box"
            extra = ' style="filled" fillcolor="lightgray"' if i in self.frozen else ""
            lines.append(f'  x{i} [shape={shape} label="x{i}"{extra}];')
        for a in range(self.m):
            lines.append(f'  xi{a} [shape=circle color="red" label="xi{a}"];')
        for i in range(self.n):
            for j in range(self.n):
                if self.B[i][j] > 0:
                    for _ in range(self.B[i][j]):
                        lines.append(f"  x{i} -> x{j};")
        for k in range(self.n):
            for i in range(self.m):
                for j in range(self.m):
                    v = self.N[k][i][j]
                    if v > 0:
                        for c in range(v):
                            group = f"p_{k}_{i}_{j}_{c}"
                            lines.append(
                                f'  xi{i} -> x{k} [color="red" pathgroup="{group}"];'
                            )
                            lines.append(
                                f'  x{k} -> xi{j} [color="red" pathgroup="{group}"];'
                            )
        lines.append("}")
        return "\n".join(lines)


def lemma_check(q: ExtendedQuiver, k: int) -> bool:
    """Independent admissibility oracle from the allowed-mutation lemma.

    For multiplicity-free 2-paths, mutation at k is allowed iff every head l
    of an outgoing arrow satisfies one of: I_k = I_l; J_k = J_l; I_k = J_k
    empty; (I_k, J_k) = (J_l, I_l); I_l = J_l empty.
    """
    for mat in q.N:
        if any(abs(v) > 1 for row in mat for v in row):
            raise MultiplicityOutOfRangeError("2-path multiplicities must be 0 or 1")
    rk = q.rectangle(k)
    if rk is None:
        return False
    _, Ik, Jk = rk
    for l, _mult in q.outgoing(k):
        rl = q.rectangle(l)
        if rl is None:
            return False
        _, Il, Jl = rl
        if not (
            Ik == Il
            or Jk == Jl
            or (Ik == () and Jk == ())
            or (Ik == Jl and Jk == Il)
            or (Il == () and Jl == ())
        ):
            return False
    return True


def odd_term(q: ExtendedQuiver, k: int) -> SuperPolynomial:
    """1 + sum of xi_i xi_j over the positive 2-path counts at vertex k."""
    if q.rectangle(k) is None:
        raise ConditionCViolatedError(f"Condition C fails at vertex {k}")
    return _odd_factor_unchecked(q, k)


def _odd_factor_unchecked(q, k):
    acc = SuperPolynomial.one(q.n, q.m)
    for i in range(q.m):
        for j in range(q.m):
            v = q.N[k][i][j]
            if v > 0:
                acc = acc + v * (
                    SuperPolynomial.xi(i, q.n, q.m) * SuperPolynomial.xi(j, q.n, q.m)
                )
    return acc


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    quiver: ExtendedQuiver
    labels: tuple
    history: tuple = ()

    @classmethod
    def initial(cls, quiver: ExtendedQuiver):
        xs, _ = generators(quiver.n, quiver.m)
        return cls(quiver=quiver, labels=tuple(xs))

    def mutate(self, k, *, require_allowed=True):
        """Exchange at k: new label = (out + odd * in) / old label, exactly.

        require_allowed=False skips the Condition C gate but still performs
        the exact division (used for forced second mutations); the division
        raises NonLaurentError if the label would leave the Laurent ring.
        """
        q = self.quiver
        if k in q.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        if require_allowed and not q.is_allowed(k):
            raise MutationForbiddenError(
                f"mutation at vertex {k} violates Condition C"
            )
        numerator = self._numerator(k)
        try:
            new_label = exact_div(numerator, self.labels[k])
        except NotDivisibleError as exc:
            raise NonLaurentError(
                f"label at vertex {k} left the Laurent ring: {exc}"
            ) from exc
        labels = list(self.labels)
        labels[k] = new_label
        return Seed(q.mutate(k), tuple(labels), self.history + (k,))

    def _numerator(self, k):
        q = self.quiver
        out = SuperPolynomial.one(q.n, q.m)
        for j, mult in q.outgoing(k):
            out = out * self.labels[j] ** mult
        inc = SuperPolynomial.one(q.n, q.m)
        for i, mult in q.incoming(k):
            inc = inc * self.labels[i] ** mult
        return out + _odd_factor_unchecked(q, k) * inc

    def classical_labels(self):
        """Bodies of the labels: the underlying classical cluster."""
        return tuple(label.body() for label in self.labels)

    def key(self):
        return (self.quiver.B, self.quiver.N, self.labels)


@dataclass(frozen=True)
class RationalSeed:
    """Seed with labels in the fraction field; no Laurent requirement."""

    quiver: ExtendedQuiver
    labels: tuple
    history: tuple = ()

    @classmethod
    def initial(cls, quiver: ExtendedQuiver):
        xs, _ = generators(quiver.n, quiver.m)
        return cls(quiver=quiver, labels=tuple(SuperRational.from_poly(x) for x in xs))

    def mutate(self, k):
        q = self.quiver
        if k in q.frozen:
            raise FrozenVertexError(f"vertex {k} is frozen")
        out = SuperRational.from_poly(SuperPolynomial.one(q.n, q.m))
        for j, mult in q.outgoing(k):
            out = out * self.labels[j] ** mult
        inc = SuperRational.from_poly(SuperPolynomial.one(q.n, q.m))
        for i, mult in q.incoming(k):
            inc = inc * self.labels[i] ** mult
        numerator = out + SuperRational.from_poly(_odd_factor_unchecked(q, k)) * inc
        old = self.labels[k]
        if old.num.body().is_zero():
            raise ZeroBodyDenominatorError(
                f"label at vertex {k} has zero body, cannot divide"
            )
        new_label = (numerator / old).simplify()
        labels = list(self.labels)
        labels[k] = new_label
        return RationalSeed(q.mutate(k), tuple(labels), self.history + (k,))


# ---------------------------------------------------------------------------
# exploration
# ---------------------------------------------------------------------------


@dataclass
class ExchangeGraph:
    nodes: list               # list of Seed
    edges: list               # (node index, node index, vertex)
    diagnostics: list         # strings for NonLaurent or similar events

    def label_strings(self):
        out = set()
        for seed in self.nodes:
            for label in seed.labels:
                out.add(render(label))
        return out

    def classical_projection(self):
        """Quotient graph after xi -> 0, on unordered classical clusters."""
        keys = []
        for seed in self.nodes:
            cluster = frozenset(render(b) for b in seed.classical_labels())
            keys.append(cluster)
        index = {}
        for ck in keys:
            index.setdefault(ck, len(index))
        proj_edges = set()
        for u, v, _k in self.edges:
            a, b = index[keys[u]], index[keys[v]]
            if a != b:
                proj_edges.add((min(a, b), max(a, b)))
        return len(index), sorted(proj_edges)


def explore(seed: Seed, depth: int, max_nodes: int | None = None) -> ExchangeGraph:
    """Breadth-first enumeration of seeds reachable by allowed mutations.

    max_nodes truncates the search on infinite-type quivers (the frontier
    stops growing once the cap is reached and a diagnostic is recorded).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = Seed(seed.quiver, seed.labels)  # drop history for node identity
    nodes = [start]
    index = {start.key(): 0}
    edges = []
    diagnostics = []
    frontier = [0]
    truncated = False
    for _ in range(depth):
        nxt = []
        for u in frontier:
            s = nodes[u]
            for k in range(s.quiver.n):
                if k in s.quiver.frozen or not s.quiver.is_allowed(k):
                    continue
                try:
                    t = s.mutate(k)
                except NonLaurentError as exc:
                    diagnostics.append(f"node {u} vertex {k}: {exc}")
                    continue
                t = Seed(t.quiver, t.labels)
                key = t.key()
                v = index.get(key)
                if v is None:
                    if max_nodes is not None and len(nodes) >= max_nodes:
                        truncated = True
                        continue
                    v = len(nodes)
                    index[key] = v
                    nodes.append(t)
                    nxt.append(v)
                if (min(u, v), max(u, v), k) not in edges:
                    edges.append((min(u, v), max(u, v), k))
        frontier = nxt
        if not frontier:
            break
    if truncated:
        diagnostics.append(f"truncated at max_nodes={max_nodes}")
    return ExchangeGraph(nodes, edges, diagnostics)


def run_cyclic(seed: Seed, order, steps, *, require_allowed=True):
    """Apply mutations cyclically through `order`, yielding each new label."""
    out = []
    s = seed
    for t in range(steps):
        k = order[t % len(order)]
        s = s.mutate(k, require_allowed=require_allowed)
        out.append(s.labels[k])
    return out, s
