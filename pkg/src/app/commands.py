"""
Subcommand pipelines.

Each command fills one section of ``report.results`` and appends its checks.
Library indices are 0-based; everything written into a report is 1-based.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Sequence

from config import Config
from core.data import CheckResult, RunReport
from core.errors import GuardExceededError, OracleScopeError
from core.logging_config import get_logger
from lie.borel import (
    COMPUTED,
    OUT_OF_SCOPE,
    borel_context,
    borel_field_invariants,
    borel_index_check,
    generic_borel_point,
    no_polynomial_invariants_check,
    orbit_level_set_check,
)
from lie.cascade import (
    Cascade,
    covers_positive_roots,
    kostant_cascade,
    linearly_independent,
    negated_by_w0,
    residual_components,
    strongly_orthogonal,
)
from lie.fixtures import check_against_golden
from lie.polyalg import PoissonContext, make_context
from lie.reduction import (
    InvariantSet,
    brute_force_invariants,
    cascade_invariants,
    compute_invariant_set,
    express_in_generators,
    jacobian_rank,
    monomial_count,
    poisson_generic_rank,
    reduction_guard,
    verify_ad_invariance,
)
from lie.rootsys import RootSystem, diagram_automorphism_phi, highest_root, is_w0_minus_identity
from lie.sampling import PointSampler
from lie.spherical import (
    check_S1_structure,
    compute_J,
    oracle_agreement,
    semi_invariance_defects,
    spherical_expansion,
)
from lie.weight_table import compute_ktable, orthogonality_defects, varpi_prime

logger = get_logger(__name__)


@dataclass
class Invocation:
    """One parsed command line, resolved against the configuration."""

    command: str
    system: RootSystem
    options: Dict[str, Any]
    config: Config

    def flag(self, name: str) -> bool:
        return bool(self.options.get(name, False))

    def sampler(self) -> PointSampler:
        return PointSampler(seed=self.config.sampling.seed, bound=self.config.sampling.coordinate_bound)


def one_based(indices: Sequence[int]) -> List[int]:
    return [i + 1 for i in indices]


def _check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, status="pass" if passed else "fail", detail=detail)


def roots_command(inv: Invocation, report: RunReport) -> None:
    system = inv.system
    report.results["roots"] = {
        "type": system.type_label,
        "rank": system.rank,
        "cartan_matrix": [list(row) for row in system.cartan_matrix],
        "positive_roots": [list(root) for root in system.positive_roots],
        "fundamental_weights": [weight.to_strings() for weight in system.fundamental_weights],
        "highest_root": list(highest_root(system)),
        "phi": one_based(diagram_automorphism_phi(system)),
        "w0_is_minus_identity": is_w0_minus_identity(system),
    }


def _cascade_payload(cascade: Cascade) -> Dict[str, Any]:
    return {
        "xis": [list(xi) for xi in cascade.xis],
        "m": cascade.m,
        "steps": [
            {
                "xi": list(step.xi),
                "level": step.level + 1,
                "singular": [list(root) for root in step.singular],
                "residual_simple_systems": [
                    [list(root) for root in component]
                    for component in residual_components(cascade, step)
                ],
            }
            for step in cascade.steps
        ],
    }


def cascade_command(inv: Invocation, report: RunReport) -> None:
    system = inv.system
    cascade = kostant_cascade(system)
    report.results["cascade"] = _cascade_payload(cascade)
    report.add_check("cascade.strongly_orthogonal", strongly_orthogonal(system, cascade.xis))
    report.add_check("cascade.linearly_independent", linearly_independent(cascade.xis))
    report.add_check("cascade.negated_by_w0", negated_by_w0(system, cascade.xis))
    report.add_check("cascade.covers_positive_roots", covers_positive_roots(cascade))


def ktable_command(inv: Invocation, report: RunReport, check_paper: bool = False) -> None:
    system = inv.system
    cascade = kostant_cascade(system)
    table = compute_ktable(system, cascade)
    payload = {
        "k": [list(row) for row in table.k],
        "k_prime": [list(row) for row in table.k_prime],
        "row_gcds": list(table.row_gcds),
        "det_sign": table.det_sign,
        "selected_rows": one_based(table.selected_rows),
        "a_set": one_based(table.a_set),
        "L": {str(i + 1): weight.to_strings() for i, weight in table.L.items()},
        "varpi_prime": [varpi_prime(system, i).to_strings() for i in range(system.rank)],
    }
    report.add_check("ktable.row_gcds", all(g in (1, 2) for g in table.row_gcds), f"gcds {list(table.row_gcds)}")
    report.add_check("ktable.unimodular", abs(table.det_sign) == 1, f"det k' = {table.det_sign}")
    defects = orthogonality_defects(cascade, table)
    report.add_check(
        "ktable.L_orthogonal_to_cascade",
        not defects,
        ", ".join(f"<L_{i + 1}, xi_{j + 1}> != 0" for i, j in defects),
    )
    if check_paper or inv.flag("check_paper"):
        comparison = check_against_golden(cascade, table)
        payload["matches"] = comparison["matches"]
        payload["discrepancies"] = comparison["discrepancies"]
        payload["notes"] = comparison["notes"]
        report.extend_checks(comparison["checks"])
    report.results["ktable"] = payload


def _verify_invariants(inv: Invocation, invariant_set: InvariantSet, ctx: PoissonContext, report: RunReport) -> Dict[str, str]:
    config = inv.config
    system = inv.system
    m = invariant_set.cascade.m
    statuses: Dict[str, str] = {}

    def record(key: str, check: CheckResult) -> None:
        report.checks.append(check)
        statuses[key] = check.status

    record("invariance", CheckResult(
        name="invariants.invariance", status="pass",
        detail=f"{m} Z's and {len(invariant_set.qs)} Q's annihilated by every {config.verification.invariance_generators} generator",
    ))

    points = inv.sampler().generic_points(
        ctx.nvars, config.sampling.samples, avoid=invariant_set.zs, max_retries=config.sampling.max_retries
    )
    q_rank = jacobian_rank(invariant_set.qs, points[0], ctx.nvars)
    z_rank = jacobian_rank(invariant_set.zs, points[0], ctx.nvars)
    independent = q_rank == m and z_rank == m
    record("independence", _check(
        "invariants.independence", independent, f"Jacobian rank Q: {q_rank}, Z: {z_rank}, m = {m}"
    ))
    level_set = orbit_level_set_check(ctx, points[0], invariant_set.qs)
    record("level_set", _check(
        "invariants.level_set", level_set.passed,
        f"orbit rank {level_set.poisson_rank}, expected {level_set.expected_rank}, tangent {level_set.tangent}",
    ))

    ranks = [poisson_generic_rank(ctx, point) for point in points]
    expected = system.dim_n - m
    record("rank", CheckResult(
        name="invariants.rank",
        status="pass" if all(r == expected for r in ranks) else "fail",
        detail=f"Poisson ranks {ranks} at {len(points)} points, expected dim n - m = {expected}",
    ))

    if system.type_label != "A":
        record("P_vs_Q", CheckResult(name="invariants.P_vs_Q", status="skipped", detail="spherical oracle covers type A only"))
    elif system.rank + 1 > config.guards.max_series_size:
        record("P_vs_Q", CheckResult(
            name="invariants.P_vs_Q", status="skipped",
            detail=f"matrix size {system.rank + 1} exceeds max_series_size {config.guards.max_series_size}",
        ))
    else:
        relations = oracle_agreement(system, invariant_set.qs, invariant_set.q_rows, config.guards.max_series_size)
        record("P_vs_Q", CheckResult(
            name="invariants.P_vs_Q",
            status="pass" if all(relations.values()) else "fail",
            detail=", ".join(f"P_{i + 1} ~ {rel or 'neither'}" for i, rel in relations.items()),
        ))

    degree = config.verification.degree_bound
    if monomial_count(ctx.nvars, degree) > config.guards.max_monomials:
        record("completeness", CheckResult(
            name="invariants.completeness", status="skipped",
            detail=f"{monomial_count(ctx.nvars, degree)} monomials exceed max_monomials {config.guards.max_monomials}",
        ))
    else:
        basis = brute_force_invariants(ctx, degree, config.guards.max_monomials, config.verification.invariance_generators)
        missing = [f for f in basis if express_in_generators(f, invariant_set.qs, ctx) is None]
        record("completeness", CheckResult(
            name="invariants.completeness",
            status="fail" if missing else "pass",
            detail=f"{len(basis)} invariants of degree <= {degree}, {len(missing)} outside K[Q]",
        ))
    return statuses


def invariants_command(inv: Invocation, report: RunReport, verify: bool = False) -> None:
    config = inv.config
    system = inv.system
    verify = verify or inv.flag("verify")
    invariant_set = compute_invariant_set(
        system,
        verify=verify,
        generators=config.verification.invariance_generators,
        max_reduction_dim=config.guards.max_reduction_dim,
        force=inv.flag("force"),
    )
    ctx = make_context(system, "nilpotent")
    payload: Dict[str, Any] = {
        "variables": list(ctx.names),
        "zs": [z.to_json() for z in invariant_set.zs],
        "qs": [q.to_json() for q in invariant_set.qs],
        "q_rows": one_based(invariant_set.q_rows),
        "weights": {
            "zs": [list(xi) for xi in invariant_set.cascade.xis],
            "qs": [invariant_set.q_weight(p).to_strings() for p in range(len(invariant_set.qs))],
        },
    }
    if verify:
        payload["checks"] = _verify_invariants(inv, invariant_set, ctx, report)
    report.results["invariants"] = payload


def spherical_command(inv: Invocation, report: RunReport) -> None:
    system = inv.system
    guards = inv.config.guards
    if system.type_label != "A":
        raise OracleScopeError(f"spherical expansions cover type A only, not {system.label}")
    index = inv.options["index"]
    if not 1 <= index <= system.rank:
        raise OracleScopeError(f"index {index} out of range 1..{system.rank} for {system.label}")
    i = index - 1
    borel = inv.flag("borel")
    expansion = spherical_expansion(system, i, include_cartan=borel, max_series_size=guards.max_series_size)
    ctx = make_context(system, "borel" if borel else "nilpotent")
    payload: Dict[str, Any] = {
        "index": index,
        "orientation": expansion.orientation.value,
        "variables": list(ctx.names),
        "k": expansion.k,
        "s0": expansion.s0.to_json(),
        "s1": expansion.s1.to_json(),
    }
    expected = varpi_prime(system, i).as_root()
    weight = ctx.weight_of(expansion.s0)
    report.add_check("spherical.s0_weight", weight == expected, f"weight {weight}, expected varpi'_{index} = {expected}")
    report.add_check("spherical.s0_invariance", verify_ad_invariance(expansion.s0, ctx, "nilpotent"))
    if borel:
        defects = semi_invariance_defects(system, i, guards.max_series_size)
        report.add_check(
            "spherical.s0_semi_invariance", not defects,
            ", ".join(f"h{j + 1}" for j in defects),
        )
        if diagram_automorphism_phi(system)[i] != i:
            j = compute_J(system, i, guards.max_series_size)
            structure = check_S1_structure(system, i, guards.max_series_size)
            payload["J"] = j.to_json()
            payload["L"] = structure.L.to_strings()
            payload["R"] = structure.R.to_json()
            report.add_check("spherical.J_invariance", True, f"J_{index} is B-invariant")
            report.add_check("spherical.s1_structure", True, f"S_{index},1 = L_{index}(y) S_{index},0 + R_{index}")
        else:
            report.checks.append(CheckResult(
                name="spherical.J_invariance", status="skipped",
                detail=f"phi fixes index {index}; there is no J_{index}",
            ))
    report.results["spherical"] = payload


def borel_command(inv: Invocation, report: RunReport) -> None:
    config = inv.config
    system = inv.system
    reduction_guard(system, config.guards.max_reduction_dim, inv.flag("force"))
    bctx = borel_context(system)
    defects = bctx.consistency_defects()
    report.add_check("borel.context", not defects, "; ".join(defects))

    degree = config.verification.degree_bound
    polynomial = no_polynomial_invariants_check(
        bctx.ctx, degree, config.guards.max_monomials, config.verification.invariance_generators
    )
    report.add_check(
        "borel.polynomial_invariants", polynomial.constants_only,
        f"degree <= {degree}: {len(polynomial.basis)} nonconstant invariants",
    )

    field = borel_field_invariants(
        system,
        seed=config.sampling.seed,
        coordinate_bound=config.sampling.coordinate_bound,
        max_retries=config.sampling.max_retries,
        max_series_size=config.guards.max_series_size,
    )
    if field.status == OUT_OF_SCOPE:
        report.checks.append(CheckResult(
            name="borel.field_invariants", status="skipped",
            detail=f"{field.expected_count} invariants expected; explicit J_i need the type-A oracle",
        ))
    else:
        report.add_check(
            "borel.field_invariants",
            field.status != COMPUTED or bool(field.independent),
            f"{len(field.invariants)} invariants, expected {field.expected_count}, Jacobian rank {field.jacobian_rank}",
        )

    zs = cascade_invariants(
        system, verify=False, max_reduction_dim=config.guards.max_reduction_dim,
        force=inv.flag("force"), cascade=bctx.cascade,
    )
    avoid = list(zs) + [j.denominator for j in field.invariants]
    sampler = inv.sampler()
    points = [
        generic_borel_point(bctx, sampler, avoid, config.sampling.max_retries)
        for _ in range(config.sampling.samples)
    ]
    rank_checks = []
    for position, point in enumerate(points):
        index_report = borel_index_check(bctx, point)
        rank_checks.append({
            "sample": position + 1,
            "rank": index_report.rank,
            "expected": index_report.expected_rank,
        })
    report.add_check(
        "borel.index",
        all(entry["rank"] == entry["expected"] for entry in rank_checks),
        f"ranks {[entry['rank'] for entry in rank_checks]}, expected dim b - |A| = {rank_checks[0]['expected']}",
    )

    payload: Dict[str, Any] = {
        "variables": list(bctx.ctx.names),
        "degree_bound": degree,
        "polynomial_invariants": "constants-only" if polynomial.constants_only else [f.to_json() for f in polynomial.basis],
        "field_invariants": {
            "status": field.status,
            "a_set": one_based(field.a_set),
            "L": {str(i + 1): weight.to_strings() for i, weight in field.L.items()},
            "invariants": [j.to_json() for j in field.invariants],
            "jacobian_rank": field.jacobian_rank,
        },
        "index": bctx.index,
        "rank_checks": rank_checks,
    }
    if field.status != OUT_OF_SCOPE:
        level_set = orbit_level_set_check(bctx.ctx, points[0], field.invariants)
        payload["level_set"] = {
            "poisson_rank": level_set.poisson_rank,
            "expected_rank": level_set.expected_rank,
            "jacobian_rank": level_set.jacobian_rank,
            "tangent": level_set.tangent,
        }
        report.add_check("borel.level_set", level_set.passed, f"orbit rank {level_set.poisson_rank}, invariants {level_set.invariant_count}")
    report.results["borel"] = payload


def verify_all_command(inv: Invocation, report: RunReport) -> None:
    """cascade -> ktable (printed-table check) -> invariants (verified) -> borel; guarded stages are skipped."""
    cascade_command(inv, report)
    ktable_command(inv, report, check_paper=True)
    stages: List[tuple] = [
        ("invariants", lambda: invariants_command(inv, report, verify=True)),
        ("borel", lambda: borel_command(inv, report)),
    ]
    for name, stage in stages:
        try:
            stage()
        except GuardExceededError as exc:
            logger.info(f"{inv.system.label}: {name} skipped by a size guard: {exc}")
            report.results[name] = {"skipped": exc.size_report}
            report.checks.append(CheckResult(name=f"{name}.guard", status="skipped", detail=str(exc)))


COMMANDS: Dict[str, Callable[[Invocation, RunReport], None]] = {
    "roots": roots_command,
    "cascade": cascade_command,
    "ktable": ktable_command,
    "invariants": invariants_command,
    "spherical": spherical_command,
    "borel": borel_command,
    "verify-all": verify_all_command,
}
