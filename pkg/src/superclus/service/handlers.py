"""Pure request -> response handlers shared by the HTTP service and the CLI.

Every handler is a deterministic function of its request model; the CLI
serializes the same models, so both surfaces emit identical JSON.
"""

from __future__ import annotations

from fractions import Fraction

from .. import forms, frieze as frz, quiver as qv, sequences as seqs
from ..superring import (
    ParseError,
    SuperPolynomial,
    SuperRational,
    generators,
    parse,
    poly_to_json,
    render,
)
from . import models as M


class DomainError(ValueError):
    """Maps to HTTP 422 / CLI exit 3."""


class InternalInvariantError(RuntimeError):
    """Maps to HTTP 500 / CLI exit 4: NonLaurent on an allowed path."""


_DOMAIN_ERRORS = (
    qv.QuiverError,
    qv.FrozenVertexError,
    qv.MutationForbiddenError,
    qv.ConditionCViolatedError,
    qv.ZeroBodyDenominatorError,
    frz.FriezeInvalidError,
    frz.NonInvertibleWestError,
    frz.NonInvertibleEastError,
    frz.OSpValidationError,
    seqs.IntegralityViolationError,
    ParseError,
)


def _domain(exc):
    return DomainError(f"{type(exc).__name__}: {exc}")


def _quiver_from_model(model: M.QuiverModel) -> qv.ExtendedQuiver:
    try:
        return qv.ExtendedQuiver.from_json(model.model_dump())
    except qv.QuiverError as exc:
        raise _domain(exc) from exc


def _quiver_to_model(q: qv.ExtendedQuiver) -> M.QuiverModel:
    return M.QuiverModel(**q.to_json())


def _poly_model(p: SuperPolynomial) -> M.PolyModel:
    return M.PolyModel(**poly_to_json(p))


def validate(req: M.ValidateRequest) -> M.ValidateResponse:
    q = _quiver_from_model(req.quiver)
    violations = q.validate()
    return M.ValidateResponse(valid=not violations, violations=violations)


def allowed(req: M.AllowedRequest) -> M.AllowedResponse:
    q = _quiver_from_model(req.quiver)
    if not (0 <= req.vertex < q.n):
        raise DomainError(f"vertex {req.vertex} out of range")
    if req.vertex in q.frozen:
        return M.AllowedResponse(allowed=False, violations=["vertex is frozen"])
    violations = q.mutate(req.vertex).validate()
    return M.AllowedResponse(allowed=not violations, violations=violations)


def mutate_quiver(req: M.QuiverMutateRequest) -> M.QuiverMutateResponse:
    q = _quiver_from_model(req.quiver)
    try:
        out = q.mutate(req.vertex)
    except (qv.FrozenVertexError, qv.QuiverError) as exc:
        raise _domain(exc) from exc
    return M.QuiverMutateResponse(
        quiver=_quiver_to_model(out), violations=out.validate()
    )


def mutate(req: M.MutateRequest) -> M.MutateResponse:
    q = _quiver_from_model(req.quiver)
    if req.labels is None:
        seed = qv.Seed.initial(q)
    else:
        if len(req.labels) != q.n:
            raise DomainError("need one label per even vertex")
        try:
            labels = tuple(parse(s, q.n, q.m) for s in req.labels)
        except ParseError as exc:
            raise _domain(exc) from exc
        seed = qv.Seed(quiver=q, labels=labels)
    if not (0 <= req.vertex < q.n):
        raise DomainError(f"vertex {req.vertex} out of range")
    was_allowed = req.vertex not in q.frozen and q.is_allowed(req.vertex)
    try:
        nxt = seed.mutate(req.vertex, require_allowed=not req.force)
    except (qv.MutationForbiddenError, qv.FrozenVertexError) as exc:
        raise _domain(exc) from exc
    except qv.NonLaurentError as exc:
        if was_allowed:
            raise InternalInvariantError(str(exc)) from exc
        raise _domain(exc) from exc
    label = nxt.labels[req.vertex]
    return M.MutateResponse(
        quiver=_quiver_to_model(nxt.quiver),
        vertex=req.vertex,
        label=render(label),
        label_terms=_poly_model(label),
        labels=[render(l) for l in nxt.labels],
        classical_label=render(label.body()),
        allowed=was_allowed,
        violations=nxt.quiver.validate(),
    )


def omega(req: M.OmegaRequest) -> M.OmegaResponse:
    q = _quiver_from_model(req.quiver)
    try:
        om = forms.omega_of(q)
    except qv.ConditionCViolatedError as exc:
        raise _domain(exc) from exc
    from ..forms import form_to_json, render_form

    data = form_to_json(om)
    invariant = None
    if req.check_vertex is not None:
        try:
            invariant = forms.check_invariance(q, req.check_vertex)
        except qv.MutationForbiddenError as exc:
            raise _domain(exc) from exc
    return M.OmegaResponse(
        omega=render_form(om),
        terms=[M.OmegaTermModel(**t) for t in data["terms"]],
        invariant=invariant,
    )


def build_frieze_object(req: M.FriezeRequest):
    """Construct the frieze itself; shared by the JSON handler and the CLI
    text exporters."""
    if req.width < 1:
        raise DomainError("width must be >= 1")
    m = req.width
    even_seed = odd_seed = None
    if req.even_seed is not None:
        if len(req.even_seed) != m:
            raise DomainError("even_seed must have width entries")
        try:
            consts = [Fraction(s) for s in req.even_seed]
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational: {exc}") from exc
        if req.odd_zero:
            even_seed = [SuperPolynomial.constant(c, 0, 0) for c in consts]
            odd_seed = [SuperPolynomial.zero(0, 0) for _ in range(m + 1)]
        else:
            even_seed = [SuperPolynomial.constant(c, 0, m + 1) for c in consts]
            _, odd_seed = generators(0, m + 1)
    try:
        return frz.build_frieze(
            m, even_seed=even_seed, odd_seed=odd_seed,
            diagonals=req.diagonals, west=req.west,
        )
    except _DOMAIN_ERRORS as exc:
        raise _domain(exc) from exc


def build_frieze(req: M.FriezeRequest) -> M.FriezeResponse:
    m = req.width
    fr = build_frieze_object(req)
    try:
        glide_ok, _rep = frz.check_glide(fr)
        period = frz.detect_period(fr)
        eq = frz.schrodinger_extract(fr)
        frz.verify_solutions(fr, eq)
        mono = eq.monodromy()
        one = SuperRational.from_poly(SuperPolynomial.one(fr.n_sym, fr.m_sym))
        zero = one * 0
        mono_ok = mono == frz.OSpMatrix(
            ((-one, zero, zero), (zero, -one, zero), (zero, zero, one))
        )
    except _DOMAIN_ERRORS as exc:
        raise _domain(exc) from exc
    return M.FriezeResponse(
        width=m,
        evens=[
            M.FriezeEntryModel(i=i, j=j, value=render(v))
            for (i, j), v in sorted(fr.evens.items())
        ],
        odds=[
            M.FriezeOddEntryModel(p2=p2, q2=q2, value=render(v))
            for (p2, q2), v in sorted(fr.odds.items())
        ],
        glide_ok=glide_ok,
        period=period,
        monodromy_ok=mono_ok,
    )


def sequence(req: M.SequenceRequest) -> M.SequenceResponse:
    try:
        if req.name == "somos":
            seq = seqs.somos4_ext(req.count)
        elif req.name == "somos2":
            seq = seqs.somos4_ext_variant(req.count)
        elif req.name == "fib":
            seq = seqs.fib_ext(req.count)
        elif req.name == "kron":
            seq = seqs.kronecker_family(req.k, req.l, req.count)
        else:
            raise DomainError(f"unknown sequence {req.name!r}")
    except (ValueError, seqs.IntegralityViolationError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise _domain(exc) from exc
    return M.SequenceResponse(
        name=req.name, a=[str(t.a) for t in seq], b=[str(t.b) for t in seq]
    )


EXPLORE_NODE_CAP = 2000


def explore(req: M.ExploreRequest) -> M.ExploreResponse:
    q = _quiver_from_model(req.quiver)
    if req.depth < 0:
        raise DomainError("depth must be nonnegative")
    graph = qv.explore(qv.Seed.initial(q), req.depth, max_nodes=EXPLORE_NODE_CAP)
    classical_nodes, classical_edges = graph.classical_projection()
    return M.ExploreResponse(
        nodes=len(graph.nodes),
        edges=sorted(graph.edges),
        labels=sorted(graph.label_strings()),
        classical_nodes=classical_nodes,
        classical_edges=classical_edges,
        diagnostics=graph.diagnostics,
    )


def cyclic(req: M.CyclicRequest) -> M.CyclicResponse:
    q = _quiver_from_model(req.quiver)
    try:
        labels, _end = qv.run_cyclic(qv.Seed.initial(q), req.order, req.steps)
    except (qv.MutationForbiddenError, qv.FrozenVertexError) as exc:
        raise _domain(exc) from exc
    except qv.NonLaurentError as exc:
        raise InternalInvariantError(str(exc)) from exc
    resp = M.CyclicResponse(labels=[render(l) for l in labels])
    if req.eval_at_ones:
        va, vb = [], []
        for lab in labels:
            a, b = seqs._dual_eval(lab, q.n) if q.m == 2 else (None, None)
            if a is None:
                raise DomainError("eval_at_ones needs exactly two odd variables")
            va.append(str(a))
            vb.append(str(b))
        resp.values_a = va
        resp.values_b = vb
    return resp
