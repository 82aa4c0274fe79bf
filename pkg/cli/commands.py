"""
Command implementations. Each takes a JobSpec and returns a report model;
nothing here prints.
"""
import itertools
import logging
import random
from typing import List, Optional

from arithmetic.scalars import Scalar
from cli.job_spec import JobSpec, Report, VerificationReport
from config.settings import GARLAND_MARGIN, HWALG_SAMPLES
from exceptions import JobSpecError
from hwalg.checks import (
    alpha_roundtrip_violations,
    basis_spanning_check,
    commdiag_violations,
    elementary_check,
    iota_predicate_violations,
)
from hwalg.embedding import embed_iota
from hwalg.symmetric import HMonomial, ev_xi, ev_xi_untwisted, highest_weight_algebra
from lie.liealg import (
    FoldedAlgebra,
    automorphism_violations,
    build_folded_algebra,
    grading_violations,
    highest_weight_vector_count,
    jacobi_violations,
    sl2_violations,
)
from lie.looplie import small_subalgebra, truncate_at_points
from lie.rootdata import build_root_system, diagram_automorphisms
from spectrum.xi import (
    XiFunction,
    admissible_choices,
    alpha_iso,
    chi_admissible,
    equivariant_with_weight,
    for_fold,
    is_equivariant,
    projection_violations,
    symmetrize,
    wt0,
)
from weylmod.garland import garland_suite, series_violations
from weylmod.local_weyl import build_local_weyl_twisted, build_local_weyl_untwisted
from weylmod.module import HWModule, generated_submodule
from weylmod.pbw import PBWContext, normal_form_action_violations, word_violations
from weylmod.verification import verify_embedding_chain

logger = logging.getLogger(__name__)


def resolve_folded(spec: JobSpec) -> FoldedAlgebra:
    """The fold named by --perm; without it the first nontrivial automorphism when
    --lambda is a weight of the folded algebra, and the trivial fold otherwise."""
    perm = spec.perm0
    if perm is None and spec.lam is not None:
        rs = build_root_system(spec.type_label, spec.rank)
        if len(spec.lam) != rs.rank:
            auts = [a for a in diagram_automorphisms(rs) if a.m == 2] or diagram_automorphisms(rs)
            if not auts:
                raise JobSpecError(f"{rs.label} has no diagram automorphism for a weight of length {len(spec.lam)}")
            perm = list(auts[0].perm)
    folded = build_folded_algebra(spec.type_label, spec.rank, perm)
    return folded


def lift_weight(folded: FoldedAlgebra, lam0) -> tuple:
    """Weight of g with lam0[i] on the representative of the i-th orbit."""
    fd = folded.fd
    out = [0] * fd.rs.rank
    for i0, c in enumerate(lam0):
        out[fd.reps[i0]] = c
    return tuple(out)


def _require_lam(spec: JobSpec, folded: FoldedAlgebra) -> tuple:
    if spec.lam is None:
        raise JobSpecError("--lambda is required for this command")
    if len(spec.lam) != folded.fd.rank0:
        raise JobSpecError(f"--lambda needs {folded.fd.rank0} coordinates, got {len(spec.lam)}")
    if any(c < 0 for c in spec.lam):
        raise JobSpecError("--lambda must be dominant")
    return tuple(spec.lam)


def resolve_chi(spec: JobSpec, folded: FoldedAlgebra) -> XiFunction:
    """--chi as given (symmetrized on request), or lambda placed at the point 1."""
    fd = folded.fd
    if spec.chi is not None:
        chi = XiFunction.from_dict(spec.chi, fd.m, fd.rs.rank)
        if spec.symmetrize:
            chi = symmetrize(chi, fd)
        return chi
    if spec.lam is not None:
        lam0 = _require_lam(spec, folded)
        xi = for_fold(fd, {1: lift_weight(folded, lam0)})
        return symmetrize(xi, fd)
    return for_fold(fd)


def build_module(spec: JobSpec, folded: FoldedAlgebra) -> HWModule:
    chi = resolve_chi(spec, folded)
    if folded.m == 1:
        return build_local_weyl_untwisted(folded, chi, spec.depth, spec.max_depth)
    return build_local_weyl_twisted(folded, chi, spec.depth, spec.max_depth)


# commands


def cmd_fold(spec: JobSpec) -> Report:
    folded = resolve_folded(spec)
    fd = folded.fd
    result = fd.to_dict()
    result["graded_dimensions"] = folded.pieces.dims()
    result["folded_cartan_from_brackets"] = folded.twisted.folded_cartan()
    result["cartan_methods_agree"] = folded.twisted.folded_cartan() == [list(r) for r in fd.folded_cartan]
    # every g_s is an irreducible g_0-module: one highest-weight line each
    result["highest_weight_vectors"] = [
        highest_weight_vector_count(folded.alg, folded.pieces, folded.twisted, s) for s in range(fd.m)
    ]
    result["averaging"] = folded.twisted.averaging_report()
    table = [["grade", "dimension"]] + [[str(s), str(d)] for s, d in enumerate(folded.pieces.dims())]
    return Report(job=spec, result=result, tables={"graded_pieces": table})


def cmd_algebra(spec: JobSpec) -> Report:
    folded = resolve_folded(spec)
    alg = folded.alg
    result = {
        "algebra": folded.rs.label,
        "dimension": alg.dim,
        "order": folded.m,
        "graded_dimensions": folded.pieces.dims(),
        "twisted_roots": [list(r) for r in folded.fd.positive_roots0],
    }
    if spec.matrices:
        result["brackets"] = alg.dump_table()
    table = [["grade", "dimension"]] + [[str(s), str(d)] for s, d in enumerate(folded.pieces.dims())]
    return Report(job=spec, result=result, tables={"graded_pieces": table})


def cmd_weyl(spec: JobSpec) -> Report:
    folded = resolve_folded(spec)
    module = build_module(spec, folded)
    result = module.to_dict(include_matrices=spec.matrices)
    if module.twisted_view is not None:
        span = generated_submodule(module, module.hw_vector, twisted_only=True)
        result["twisted_cyclic"] = span.dim == module.dim
    table = [["weight", "multiplicity"]] + [
        [" ".join(str(c) for c in w), str(n)] for w, n in sorted(module.character_g0().items())
    ]
    return Report(job=spec, result=result, tables={"character_g0": table})


def cmd_xi(spec: JobSpec) -> Report:
    folded = resolve_folded(spec)
    fd = folded.fd
    if spec.chi is None:
        raise JobSpecError("--chi is required for the xi command")
    chi = resolve_chi(spec, folded)
    result = {"chi": chi.to_dict(), "equivariant": is_equivariant(chi, fd)}
    if result["equivariant"]:
        xi = chi_admissible(chi, fd)
        result.update({
            "admissible_choices": len(admissible_choices(chi, fd)),
            "chi_admissible": xi.to_dict(),
            "tau": list(xi.wt()),
            "wt0": list(wt0(chi, fd)),
            "alpha": alpha_iso(chi, fd).to_dict(),
            "projection_violations": projection_violations(chi, fd),
        })
    else:
        result["symmetrized"] = symmetrize(chi, fd).to_dict()
    return Report(job=spec, result=result)


def cmd_hwalg(spec: JobSpec) -> Report:
    folded = resolve_folded(spec)
    fd = folded.fd
    twisted = fd.m > 1
    if twisted:
        lam = _require_lam(spec, folded)
    else:
        lam = tuple(spec.lam or ())
        if len(lam) != fd.rs.rank:
            raise JobSpecError(f"--lambda needs {fd.rs.rank} coordinates")
    hw = highest_weight_algebra(fd, lam, twisted=twisted)
    chi = resolve_chi(spec, folded) if spec.chi is not None else None
    generators = []
    table = [["node", "k", "generator", "value"]]
    for i in range(hw.rank):
        if not hw.shape.sizes[i]:
            continue
        step = hw.shape.steps[i]
        for k in range(-spec.bound, spec.bound + 1):
            if not k or k % step:
                continue
            element = hw.sym_generator(i, k)
            generators.append({"node": i + 1, "k": k, "element": element.to_dict()})
            value = ""
            if chi is not None:
                mono = HMonomial.of([(i, -k)])
                value = str(ev_xi(chi, mono, fd) if twisted else ev_xi_untwisted(chi, mono))
            table.append([str(i + 1), str(k), f"p_{k}(t_{i + 1})", value])
    result = {"algebra": hw.to_dict(), "generators": generators}
    if twisted:
        result["iota"] = embed_iota(lift_weight(folded, lam), fd).to_dict()
    return Report(job=spec, result=result, tables={"generators": table})


# verification suites


def _verified(spec: JobSpec, checks, witnesses, result) -> VerificationReport:
    passed = all(checks.values())
    if not passed:
        logger.error(f"verify {spec.suite}: failed checks {[k for k, v in checks.items() if not v]}")
    return VerificationReport(
        job=spec, result=result, passed_all=passed, checks=checks, witnesses=[str(w) for w in witnesses]
    )


def verify_jacobi(spec: JobSpec) -> VerificationReport:
    folded = resolve_folded(spec)
    alg, lifted = folded.alg, folded.lifted
    jacobi = jacobi_violations(alg, limit=10)
    auto = automorphism_violations(lifted)
    grading = grading_violations(alg, lifted, folded.pieces)
    copies = []
    for k0 in range(len(folded.fd.positive_roots0)):
        for copy in small_subalgebra(folded, k0).copies:
            copies.extend(copy.relation_violations(alg))
    twisted_sl2 = []
    for k0 in range(len(folded.fd.positive_roots0)):
        twisted_sl2.extend(sl2_violations(alg, *folded.twisted.sl2_triple(k0)))
    one = Scalar(1, 0, folded.m)
    truncation = truncate_at_points(folded, {one: 1}, twisted=folded.m > 1)
    truncated = truncation.jacobi_violations(limit=10)
    # U(L) acting on the trivial character: straightening must not depend on the swap order
    ctx = PBWContext(truncation, lambda x: 0)
    plus, minus = truncation.n_plus(), truncation.n_minus()
    rng = random.Random(spec.seed)
    pbw = []
    for word in ((plus[0], minus[0], plus[-1]), (plus[-1], minus[-1], minus[0], plus[0])):
        pbw.extend(word_violations(ctx, word, rng))
        pbw.extend(normal_form_action_violations(ctx, word))
    checks = {
        "jacobi": not jacobi,
        "automorphism": not auto,
        "grading": not grading,
        "folded_cartan": folded.twisted.folded_cartan() == [list(r) for r in folded.fd.folded_cartan],
        "sl2_copies": not copies,
        "twisted_sl2_triples": not twisted_sl2,
        "truncated_jacobi": not truncated,
        "evaluation_at_one": truncation.evaluation_rank([one]) == truncation.dim,
        "pbw_confluence": not pbw,
    }
    witnesses = [f"Jacobi fails on {[alg.label(i) for i in t]}" for t in jacobi]
    witnesses += [f"sigma fails on {pair}" for pair in auto]
    witnesses += [f"grading fails on {pair}" for pair in grading]
    witnesses += copies
    witnesses += twisted_sl2
    witnesses += [f"truncated Jacobi fails on {list(t)}" for t in truncated]
    witnesses += pbw
    result = {"algebra": folded.rs.label, "dimension": alg.dim, "truncation_dimension": truncation.dim}
    return _verified(spec, checks, witnesses, result)


def verify_garland_suite(spec: JobSpec, module: Optional[HWModule] = None) -> VerificationReport:
    folded = resolve_folded(spec)
    module = module or build_module(spec, folded)
    checks_run = garland_suite(module, folded, GARLAND_MARGIN)
    order = max((c.r for c in checks_run), default=0)
    series = series_violations(order)
    checks = {
        "series": not series,
        "identity": all(c.identity_holds for c in checks_run),
        "corollary": all(c.corollary_holds is not False for c in checks_run),
    }
    witnesses: List[str] = list(series)
    for c in checks_run:
        if not c.passed:
            witnesses.append(f"root {c.k0} copy {c.copy} c={c.multiple} r={c.r}: {c.witness}")
    result = {"module": module.name, "dimension": module.dim, "cases": [c.to_dict() for c in checks_run]}
    return _verified(spec, checks, witnesses, result)


def sample_chis(folded: FoldedAlgebra, lam0, count: int, seed: int) -> List[XiFunction]:
    """count distinct equivariant functions of restricted weight lam0."""
    rng = random.Random(seed)
    out: List[XiFunction] = []
    for _ in range(20 * count):
        chi = equivariant_with_weight(rng, folded.fd, lam0)
        if chi not in out:
            out.append(chi)
        if len(out) == count:
            break
    return out


def verify_embedding(spec: JobSpec) -> VerificationReport:
    folded = resolve_folded(spec)
    if spec.chi is not None:
        chis = [resolve_chi(spec, folded)]
        lam0 = wt0(chis[0], folded.fd)
    else:
        lam0 = _require_lam(spec, folded)
        chis = sample_chis(folded, lam0, spec.samples, spec.seed)
    report = verify_embedding_chain(folded, lam0, chis, spec.depth)
    return _verified(spec, report.checks, report.witnesses, report.to_dict())


def verify_hwalg(spec: JobSpec) -> VerificationReport:
    folded = resolve_folded(spec)
    fd = folded.fd
    lam0 = _require_lam(spec, folded)
    rng = random.Random(spec.seed)
    samples = max(spec.samples, HWALG_SAMPLES)
    hw = highest_weight_algebra(fd, lam0, twisted=True)
    commdiag = commdiag_violations(fd, lam0, rng, samples) if fd.m > 1 else []
    roundtrip = alpha_roundtrip_violations(fd, rng, samples) if fd.m > 1 else []
    spanning = basis_spanning_check(hw, spec.bound)
    elementary = [bad for i in range(hw.rank) for bad in elementary_check(hw, i)]
    iota = []
    if fd.m > 1:
        weights = [w for w in itertools.product(range(3), repeat=fd.rs.rank) if 0 < sum(w) <= 2]
        iota = iota_predicate_violations(fd, weights)
    checks = {
        "commdiag": not commdiag,
        "alpha_roundtrip": not roundtrip,
        "spanning": spanning.passed,
        "elementary": not elementary,
        "iota_predicate": not iota,
    }
    witnesses = commdiag + roundtrip + spanning.failures + elementary + iota
    if spanning.witness:
        witnesses.append(f"dependent family: {spanning.witness}")
    result = {"spanning": spanning.to_dict(), "samples": samples}
    return _verified(spec, checks, witnesses, result)


SUITES = {
    "jacobi": verify_jacobi,
    "garland": verify_garland_suite,
    "embedding": verify_embedding,
    "hwalg": verify_hwalg,
}


def cmd_verify(spec: JobSpec) -> VerificationReport:
    if spec.suite not in SUITES:
        raise JobSpecError(f"Unknown suite {spec.suite!r}; choose from {sorted(SUITES)}")
    return SUITES[spec.suite](spec)


COMMANDS = {
    "fold": cmd_fold,
    "algebra": cmd_algebra,
    "weyl": cmd_weyl,
    "xi": cmd_xi,
    "hwalg": cmd_hwalg,
    "verify": cmd_verify,
}


def run_job(spec: JobSpec) -> Report:
    if spec.command not in COMMANDS:
        raise JobSpecError(f"Unknown command {spec.command!r}")
    logger.info(f"Running {spec.command}{' ' + spec.suite if spec.suite else ''} on {spec.type_label}{spec.rank}")
    return COMMANDS[spec.command](spec)
