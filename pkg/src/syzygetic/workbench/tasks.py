"""Task dispatch: each task turns a validated config into a result block."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from .. import artin_rees as AR
from .. import kas as K
from ..complexes import (
    ChainComplex, ChainComplexError, buchsbaum_eisenbud_exact, homology, is_exact_by_homology,
    koszul_complex, koszul_grade, minors_ideal, power_complex, presentation_differential,
    tensor_homology, two_term_perturbation_test,
)
from ..groebner import Ideal, ideal_power
from ..modules import FreeModule, ModuleMap, Subquotient
from ..resolution import free_resolution, resolution_is_exact, syzygy_module
from ..ring import HomogeneityError, ParseError, QuotientRing
from .config import ConfigError, ExperimentConfig, parse_config
from .report import RunReport, derive_seed


class TaskError(RuntimeError):
    """A run that could not complete; ``kind`` classifies the cause."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        self.message = message
        super().__init__(f"{kind}: {message}")

    def to_json(self) -> dict:
        return {"error": self.kind, "message": self.message}


# -- building objects from parameters ------------------------------------------------

def poly(R: QuotientRing, g):
    return R(g) if isinstance(g, str) else R.reduce(R.ambient.const(g))


def polys(R: QuotientRing, gens) -> list:
    return [poly(R, g) for g in gens]


def ideal_from(R: QuotientRing, gens) -> Ideal:
    return Ideal(R, polys(R, gens))


def maximal_ideal(R: QuotientRing) -> Ideal:
    return Ideal(R, R.gens())


def module_from(R: QuotientRing, mspec: dict) -> tuple[str, Subquotient]:
    I = ideal_from(R, mspec["ideal"])
    return _syzygy_of(I, mspec.get("syzygy", 0))


def _syzygy_of(I: Ideal, k: int) -> tuple[str, Subquotient]:
    M = syzygy_module(Subquotient.cyclic(I), k)
    desc = f"R/{I.describe()}" if k == 0 else f"syz_{k}(R/{I.describe()})"
    return desc, M


def module_family(R: QuotientRing, params: dict, seed: int) -> list[tuple[str, Subquotient]]:
    if "modules" in params:
        return [module_from(R, s) for s in params["modules"]]
    fam = params["module_family"]
    k = fam.get("syzygy", R.dimension)
    ideals = _seeded_ideals(R, fam["ideals"], derive_seed(seed, "module_family"))
    return [_syzygy_of(I, k) for _, I in ideals]


def _seeded_ideals(R: QuotientRing, fam: dict, seed: int) -> list[tuple[str, Ideal]]:
    return AR.seeded_ideal_family(R, fam["count"], seed, fam.get("kind", "homogeneous"),
                                  fam.get("max_degree", 2), fam.get("max_gens", 3))


def ideal_family(R: QuotientRing, params: dict, seed: int) -> list[tuple[str, Ideal]]:
    if "ideals" in params:
        out = []
        for gens in params["ideals"]:
            I = ideal_from(R, gens)
            out.append((I.describe(), I))
        return out
    return _seeded_ideals(R, params["ideal_family"], derive_seed(seed, "ideal_family"))


def complex_from_matrices(R: QuotientRing, mats) -> ChainComplex:
    """``∂_1, ∂_2, ...`` given as row-major matrices; degrees are inferred."""
    maps = []
    tdeg = None
    for k, rows in enumerate(mats):
        if tdeg is None:
            tdeg = [0] * len(rows)
        if len(rows) != len(tdeg):
            raise ValueError(f"matrix {k} has {len(rows)} rows, expected {len(tdeg)}")
        if not rows or not rows[0]:
            raise ValueError(f"matrix {k} is empty")
        phi = ModuleMap.from_matrix(R, rows, tdeg)
        maps.append(phi)
        tdeg = list(phi.source.degrees)
    return ChainComplex.from_maps(maps)


def kas_ideal_modules(R: QuotientRing, params: dict) -> list[tuple[str, Subquotient]]:
    gens_list = params.get("ideals") or [[str(g) for g in R.gens()]]
    return K.dth_syzygy_family(R, [ideal_from(R, g) for g in gens_list])


def candidate_from(R: QuotientRing, cfg: ExperimentConfig) -> K.KASCandidate:
    p = cfg.params
    return K.kas_candidate(R, derive_seed(cfg.seed, "kas.candidate"), p.get("degree_bound", 3),
                           p.get("retries", 25), policy=p.get("exponent_policy", "empirical"))


def _homology_summary(H: Subquotient) -> dict:
    zero = H.is_zero()
    if zero:
        return {"zero": True, "length": 0}
    ln = H.length()
    return {"zero": False, "length": "infinite" if ln is None else ln,
            "hilbert_numerator": {str(k): v for k, v in sorted(H.hilbert_numerator().items()) if v}}


# -- tasks -----------------------------------------------------------------------------

def task_bounds_table(R, cfg):
    tab = K.BoundFunctionTable.build(cfg.params.get("max_delta", 6))
    return {
        "rows": tab.rows(),
        "recursion_violations": tab.recursion_violations(),
        "e1_exceeds_e": [list(k) for k in tab.e1_exceeds_e()],
    }, []


def task_koszul(R, cfg):
    p = cfg.params
    seq = polys(R, p["sequence"])
    C = koszul_complex(seq, R)
    M = module_from(R, p["module"])[1] if "module" in p else None
    out = {}
    for i in range(0, C.length + 1):
        H = homology(C, i) if M is None else tensor_homology(C, M, i)
        out[str(i)] = _homology_summary(H)
    res = {"ranks": C.ranks(), "homology": out}
    I = Ideal(R, seq)
    if M is None and not I.is_zero() and not I.is_unit():
        res["grade"] = koszul_grade(I)
    return res, []


def task_exactness(R, cfg):
    p = cfg.params
    if "matrices" in p:
        C = complex_from_matrices(R, p["matrices"])
    else:
        C = koszul_complex(polys(R, p["sequence"]), R)
    cert = buchsbaum_eisenbud_exact(C)
    direct = is_exact_by_homology(C)
    return {"ranks": C.ranks(), "buchsbaum_eisenbud": cert.to_json(), "homology_exact": direct,
            "agree": cert.exact == direct}, []


def task_power_complex(R, cfg):
    p = cfg.params
    gens = polys(R, p["sequence"])
    n = p.get("n", 2)
    C = power_complex(gens, n, R)
    phi = presentation_differential(C)
    size = phi.target.rank if phi.source.rank >= phi.target.rank else phi.source.rank
    minors = minors_ideal(phi, size)
    Jn = ideal_power(Ideal(R, gens), n)
    return {
        "ranks": C.ranks(),
        "presentation_matrix": [[str(e) for e in row] for row in phi.matrix()],
        "minor_size": size,
        "minors_ideal": [str(g) for g in minors.minimal_generators().generators],
        "minors_equal_power": minors.contains_ideal(Jn) and Jn.contains_ideal(minors),
        "exact": is_exact_by_homology(C),
    }, []


def task_resolve(R, cfg):
    p = cfg.params
    desc, M = module_from(R, p["module"])
    res = free_resolution(M, p.get("length", R.dimension + 2))
    gb = res.graded_betti()
    return {
        "module": desc,
        "betti_numbers": res.betti_numbers(),
        "graded_betti": [[i, d, c] for (i, d), c in sorted(gb.items())],
        "betti_table_csv": res.betti_table_csv(),
        "minimal": res.is_minimal(),
        "exact": resolution_is_exact(res),
    }, []


def _ar_case(rec: dict, m_desc: str, I_desc: str, i) -> dict:
    rec = dict(rec)
    rec.update({"module_desc": m_desc, "ideal_desc": I_desc, "i": i})
    return rec


def task_ar_number(R, cfg):
    p = cfg.params
    I = ideal_from(R, p.get("ideal", [str(g) for g in R.gens()]))
    n_max = p.get("n_max", 6)
    strong = p.get("strong", True)
    cases = []
    if "submodule" in p:
        vecs = p["submodule"]
        r = len(vecs[0]) if vecs else 0
        if r == 0 or any(len(v) != r for v in vecs):
            raise ValueError("submodule vectors must be nonempty and of equal length")
        degs = _infer_degrees(R, vecs + p.get("ambient", []))
        F = FreeModule(R, degs)
        A = Subquotient(F, [polys(R, v) for v in vecs])
        B = Subquotient(F, [polys(R, v) for v in p["ambient"]]) if "ambient" in p else F
        ar = AR.artin_rees_number(A, B, I, n_max, pair_id="A⊆B", strong=strong)
        cases.append(_ar_case(ar.to_json(), "A⊆B", I.describe(), None))
    else:
        desc, M = module_from(R, p["module"])
        i_values = p.get("i_values", [R.dimension])
        for i, ar in AR.syzygetic_ar(M, I, i_values, n_max, strong=strong).items():
            cases.append(_ar_case(ar.to_json(), desc, I.describe(), i))
    for k, c in enumerate(cases):
        c["case_id"] = str(k)
    return {"ideal": I.describe(), "n_max": n_max, "label": AR.WINDOW_LABEL}, cases


def _infer_degrees(R: QuotientRing, vecs) -> list[int]:
    """Component twists making every given vector homogeneous of degree 0 or more."""
    r = len(vecs[0])
    degs = [None] * r
    for v in vecs:
        if len(v) != r:
            raise ValueError("vectors have different lengths")
        entries = polys(R, v)
        for c, f in enumerate(entries):
            if f.terms and not f.is_homogeneous():
                raise HomogeneityError(f"entry {f} is not homogeneous")
        nz = [(c, f) for c, f in enumerate(entries) if f.terms]
        if not nz:
            continue
        # total degree = entry degree + twist; anchor on the first known twist
        anchor = next(((c, f) for c, f in nz if degs[c] is not None), None)
        total = (anchor[1].degree() + degs[anchor[0]]) if anchor else nz[0][1].degree()
        for c, f in nz:
            want = total - f.degree()
            if degs[c] is None:
                degs[c] = want
            elif degs[c] != want:
                raise HomogeneityError("vectors admit no consistent grading")
    return [0 if d is None else d for d in degs]


def _sweep_module(args) -> list[dict]:
    cfg_dict, m_idx = args
    cfg = parse_config(cfg_dict)
    R = cfg.build_ring()
    mods = module_family(R, cfg.params, cfg.seed)
    ideals = _sweep_ideals(R, cfg)[0]
    p = cfg.params
    rep = AR.uniform_sweep([mods[m_idx]], ideals, p.get("i_min"), p.get("n_max", 6), cfg.seed,
                           p.get("i_max"), strong=p.get("strong", False))
    return rep.cases


def _sweep_ideals(R: QuotientRing, cfg: ExperimentConfig):
    p = cfg.params
    ideals = ideal_family(R, p, cfg.seed)
    if p.get("mode", "all-ideals") == "all-ideals":
        return ideals, []
    cand = candidate_from(R, cfg)
    kept, skipped = [], []
    for k, (desc, I) in enumerate(ideals):
        try:
            sr = K.special_reduction(I, cand, derive_seed(cfg.seed, f"special_reduction/{k}"),
                                     p.get("k_max", 6), p.get("retries", 20))
        except (ValueError, K.KASSearchError) as exc:
            skipped.append({"ideal_desc": desc, "reason": str(exc)})
            continue
        J = Ideal(R, sr["elements"])
        kept.append((f"{J.describe()} reducing {desc}", J))
    return kept, skipped


def task_sweep(R, cfg, jobs: int | None = None):
    p = cfg.params
    mods = module_family(R, p, cfg.seed)
    ideals, skipped = _sweep_ideals(R, cfg)
    if not ideals:
        raise ValueError("no ideals left in the family")
    args = [(cfg.to_dict(), k) for k in range(len(mods))]
    if jobs and jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_module, args))
    else:
        parts = [_sweep_module(a) for a in args]
    cases = [c for part in parts for c in part]
    max_h = 0
    for k, c in enumerate(cases):
        c["case_id"] = str(k)
        c["n_max"] = c.get("n_max")
        c["status"] = c.get("status")
        h = c["h_weak"]
        if h == AR.UNBOUNDED:
            max_h = None
        elif max_h is not None:
            max_h = max(max_h, h)
    i_min = p.get("i_min", R.dimension)
    result = {
        "family": {"modules": [d for d, _ in mods], "ideals": [d for d, _ in ideals],
                   "i_min": i_min, "i_max": p.get("i_max", i_min + 1), "n_max": p.get("n_max", 6),
                   "mode": p.get("mode", "all-ideals")},
        "skipped_ideals": skipped,
        "max_h": max_h if max_h is not None else AR.UNBOUNDED,
        "label": AR.FAMILY_LABEL,
        "scope": AR.SweepReport({}, [], 0, 0).scope,
    }
    return result, cases


def task_kas_find(R, cfg):
    p = cfg.params
    anns = K.cohomology_annihilators(R)
    cand = K.kas_candidate(R, derive_seed(cfg.seed, "kas.candidate"), p.get("degree_bound", 3),
                           p.get("retries", 25), anns=anns, policy=p.get("exponent_policy", "empirical"))
    if p.get("exponent_search", False):
        e = K.find_empirical_exponent(cand, kas_ideal_modules(R, p), p.get("t_list", [1]),
                                      derive_seed(cfg.seed, "kas.sop"), p.get("n_max", 2), p.get("t_cap", 16))
        if e is None:
            raise TaskError("search-cap", "no passing exponent up to the cap")
        cand.empirical_exponent = e
    return {"annihilators": anns.to_json(), "candidate": cand.to_json(),
            "candidate_hash": cand.content_hash()}, []


def task_kas_verify(R, cfg):
    p = cfg.params
    cand = candidate_from(R, cfg)
    rep = K.kas_verify(cand, kas_ideal_modules(R, p), None, p.get("t_list", [1, 2]),
                       derive_seed(cfg.seed, "kas.sop"), p.get("n_max", 2), p.get("sop_per_k", 1))
    rep["candidate_json"] = cand.to_json()
    return rep, []


def task_special_reduction(R, cfg):
    p = cfg.params
    cand = candidate_from(R, cfg)
    I = ideal_from(R, p["ideal"])
    sr = K.special_reduction(I, cand, derive_seed(cfg.seed, "special_reduction"), p.get("k_max", 6),
                             p.get("retries", 20))
    sr["elements"] = [str(x) for x in sr["elements"]]
    sr["candidate"] = cand.content_hash()
    return sr, []


def task_fromagt(R, cfg):
    p = cfg.params
    cand = candidate_from(R, cfg)
    if "x_seq" in p:
        xs = polys(R, p["x_seq"])
        if len(xs) != R.dimension or not K.well_suited_check(xs, cand.elements, R):
            raise ValueError("x_seq is not a system of parameters well-suited to the candidate")
    else:
        I = ideal_from(R, p.get("ideal", [str(g) for g in R.gens()]))
        xs = K.special_reduction(I, cand, derive_seed(cfg.seed, "special_reduction"), p.get("k_max", 6),
                                 p.get("retries", 20))["elements"]
    rep = K.fromagt_grid(cand, xs, kas_ideal_modules(R, p), p.get("i_max"), p.get("n_max", 3),
                         None, p.get("t_cap", K.T_CAP))
    return rep, []


def task_perturb(R, cfg):
    p = cfg.params
    phi = ModuleMap.from_matrix(R, p["matrix"])
    return two_term_perturbation_test(phi, p.get("q", 1), p.get("trials", 5), derive_seed(cfg.seed, "perturb"),
                                      p.get("perturbations")), []


HANDLERS = {
    "bounds-table": task_bounds_table,
    "koszul": task_koszul,
    "exactness": task_exactness,
    "power-complex": task_power_complex,
    "resolve": task_resolve,
    "ar-number": task_ar_number,
    "syzygetic-sweep": task_sweep,
    "kas-find": task_kas_find,
    "kas-verify": task_kas_verify,
    "special-reduction": task_special_reduction,
    "fromagt": task_fromagt,
    "perturb-test": task_perturb,
}

# exceptions that are outcomes of bad input or failed searches, not defects
CLEAN_ERRORS = (ConfigError, ParseError, HomogeneityError, ChainComplexError, K.KASSearchError,
                ValueError, TaskError)


def run(cfg: ExperimentConfig, jobs: int | None = None) -> RunReport:
    """Execute the configured task; raises TaskError on a clean failure."""
    start = time.perf_counter()
    try:
        R = cfg.build_ring()
        handler = HANDLERS[cfg.task]
        if cfg.task == "syzygetic-sweep":
            result, cases = handler(R, cfg, jobs)
        else:
            result, cases = handler(R, cfg)
    except TaskError:
        raise
    except ConfigError as exc:
        raise TaskError("config", str(exc)) from None
    except K.KASSearchError as exc:
        raise TaskError("search-failed", f"{exc} {exc.certificate}") from None
    except (ParseError, HomogeneityError, ChainComplexError, ValueError) as exc:
        raise TaskError("precondition", str(exc)) from None
    report = RunReport(cfg.to_dict(), cfg.task, result, cases)
    report.wall_clock = time.perf_counter() - start
    return report
