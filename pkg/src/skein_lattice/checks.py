"""Named checks for manifest-driven runs.

Each check takes a small dict of JSON parameters, validates it up front (a bad
parameter is a manifest error, not a failed check) and returns a
:class:`~skein_lattice.factorization.Verdict`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable

from sympy import isprime

from .bases import FAMILY_IDS, build_family, families_for, gram, lollipop_sharp_index_check
from .bases import lollipop_tensor_check, m_choice_report, u_support_check, verify_families
from .factorization import (FactorizationContext, F_unimodular, Verdict, genus2_F,
                            kappa_factorization_check, product_formula_check, u_element_check,
                            vacuum_corpus_check)
from .fkb import (SOLID_TORUS, BoundedManifold, basis_independence_check, closed_crosscheck,
                  corpus, fkb_generators, fkb_ideal, fkb_product_check, monotonicity_check,
                  monotonicity_pairs)
from .invariants import (ChainLinkPresentation, bracket_invariant, invariant_I, invariant_theta,
                         kappa_ratio)
from .linalg import kron
from .recoupling import eyeglass, h_divisibility, oracle_check, tripod
from .torus import TWICE_ODD, theory


class ManifestError(ValueError):
    """A check descriptor that cannot be executed as written."""


# ---------------------------------------------------------------------------
# parameter validation
# ---------------------------------------------------------------------------

def _int(params: dict, key: str, default: Any = None) -> int:
    if key not in params:
        if default is None:
            raise ManifestError(f"missing parameter {key!r}")
        return default
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ManifestError(f"parameter {key!r} must be an integer")
    return v


def level(p: int) -> int:
    if p == 2 or (p > 2 and isprime(p)) or (p % 2 == 0 and p > 4 and isprime(p // 2)):
        return p
    raise ManifestError(f"p = {p} must be 2, an odd prime, or twice an odd prime")


def odd_prime(r: int) -> int:
    if r < 3 or not isprime(r):
        raise ManifestError(f"r = {r} must be an odd prime")
    return r


def _p(params: dict) -> int:
    return level(_int(params, "p"))


def _r(params: dict) -> int:
    return odd_prime(_int(params, "r"))


def _twice_odd(params: dict, allowed: tuple[int, ...] = ()) -> int:
    p = _p(params)
    if p % 2 or p == 2:
        raise ManifestError(f"p = {p} must be twice an odd prime")
    if allowed and p not in allowed:
        raise ManifestError(f"p must be one of {list(allowed)}")
    return p


def _presentations(params: dict, default: Callable[[], list[ChainLinkPresentation]]
                   ) -> list[ChainLinkPresentation]:
    if "presentations" not in params:
        return default()
    out = []
    for d in params["presentations"]:
        try:
            out.append(ChainLinkPresentation.from_json(d))
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"bad presentation {d!r}: {exc}") from exc
    return out


def _manifolds(params: dict) -> list[BoundedManifold]:
    if "corpus" not in params:
        return corpus()
    out = []
    for d in params["corpus"]:
        try:
            out.append(BoundedManifold(int(d.get("cable", 0)), int(d.get("core_color", 0)),
                                       tuple(int(k) for k in d.get("omega_twists", ())),
                                       int(d.get("twist", 0)), str(d.get("label", ""))))
        except (AttributeError, TypeError, ValueError) as exc:
            raise ManifestError(f"bad bounded manifold {d!r}: {exc}") from exc
    return out


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------

def standard_presentations(lens_max: int = 16, chain_length: int = 3,
                           framing_range: int = 3) -> list[ChainLinkPresentation]:
    """S^3, S^1 x S^2, L(n,1), L(2,1) # L(3,1) and all short surgered chains."""
    C = ChainLinkPresentation
    out = [C.empty(), C.s1s2()]
    out += [C.lens(n) for n in range(1, lens_max + 1)]
    out.append(C.lens(2).connected_sum(C.lens(3)))
    fr = range(-framing_range, framing_range + 1)
    for k in range(1, chain_length + 1):
        out += [C.chain(fs) for fs in product(fr, repeat=k)]
    return out


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def _combine(name: str, parts: list[Verdict], **extra: Any) -> Verdict:
    return Verdict(name, all(v.ok for v in parts), {**extra, "parts": [v.to_json() for v in parts]})


def check_kappa(params: dict) -> Verdict:
    return kappa_factorization_check(FactorizationContext(_r(params)))


def check_product_formula(params: dict) -> Verdict:
    r = _r(params)
    lens_max = _int(params, "lens_max", 16 if r == 3 else 10)
    chain_length = _int(params, "chain_length", 3)
    pres = _presentations(params, lambda: standard_presentations(lens_max, chain_length))
    ctx = FactorizationContext(r)
    verdicts = [product_formula_check(L, ctx) for L in pres]
    failures = [v.witnesses["presentation"] for v in verdicts if not v.ok]
    return Verdict("product-formula", not failures,
                   {"r": r, "presentations": len(verdicts), "failures": failures,
                    "sample": [v.to_json() for v in verdicts[:4]]})


def check_normalization(params: dict) -> Verdict:
    p = _p(params)
    th = theory(p)
    C = ChainLinkPresentation
    D2 = sum((d * d for d in th.deltas), th.zero())
    ratio = kappa_ratio(th)
    pairs = [(C.lens(a), C.chain(fs)) for a in (1, 2, 3) for fs in ([1, 2], [-1, 3], [2, 0, -2])]
    csum = all(bracket_invariant(x.connected_sum(y), th)
               == th.D * bracket_invariant(x, th) * bracket_invariant(y, th) for x, y in pairs)
    rows = {"D^2 = sum Delta_i^2": th.D2 == D2,
            "<S3> D = 1": bracket_invariant(C.empty(), th) * th.D == 1,
            "<S1xS2> = 1": bracket_invariant(C.s1s2(), th) == 1,
            "<M1 # M2> = D <M1> <M2>": csum,
            "kappa ratio is a root of unity": ratio.is_integral and ratio.is_unit()
            and any(ratio ** k == 1 for k in range(1, 2 * th.n + 1))}
    return Verdict("normalization", all(rows.values()),
                   {"p": p, "checks": rows, "D": th.D, "kappa": th.kappa, "kappa_ratio": ratio})


def check_gram(params: dict) -> Verdict:
    p = _p(params)
    genus = _int(params, "genus", 1)
    fid = params.get("family")
    if fid not in FAMILY_IDS or fid not in families_for(p, genus):
        raise ManifestError(f"family {fid!r} is not available at p = {p}, genus {genus}")
    rep = gram(build_family(fid, p, genus))
    return Verdict("gram", rep.is_unit and rep.integral and rep.hermitian,
                   {"p": p, "genus": genus, "family": fid, "gram": rep})


def check_two_theory_tensor(params: dict) -> Verdict:
    """The genus-two 2-theory Gram matrix is the Kronecker square of B."""
    B = gram(build_family("two-theory-genus1", 2)).matrix
    G = gram(build_family("two-theory-Σg2n", 2, 2)).matrix
    BB = kron(B, B)
    return Verdict("two-theory-tensor", G == BB, {"gram": G, "B (x) B": BB})


def check_bases(params: dict) -> Verdict:
    p = _p(params)
    genus = _int(params, "genus", 1)
    if not families_for(p, genus):
        raise ManifestError(f"no families implemented for p = {p}, genus {genus}")
    parts = [verify_families(p, genus)]
    if genus == 1 and theory(p).kind == TWICE_ODD:
        parts.append(u_support_check(FactorizationContext(p // 2)))
    return _combine("bases-verify", parts, p=p, genus=genus)


def check_u_element(params: dict) -> Verdict:
    return u_element_check(FactorizationContext(_r(params)))


def check_factorization(params: dict) -> Verdict:
    ctx = FactorizationContext(_r(params))
    parts = [F_unimodular(ctx), vacuum_corpus_check(ctx)]
    if ctx.r in (3, 5):
        parts.append(genus2_F(ctx).isometry_check())
    return _combine("factorization", parts, r=ctx.r)


def check_h_divisibility(params: dict) -> Verdict:
    p = _twice_odd(params)
    th = theory(p)
    graphs = {"eyeglass": eyeglass(th)}
    if _int(params, "tripod", 1 if p == 6 else 0):
        graphs["tripod"] = tripod(th)
    res = {k: h_divisibility(m, 1, th) for k, m in graphs.items()}
    return Verdict("h-divisibility", all(res.values()),
                   {"p": p, "divisible_by_h": res,
                    "u_expansions": {k: str(m) for k, m in graphs.items()}})


def check_lollipop_index(params: dict) -> Verdict:
    p = _twice_odd(params, (6, 10))
    genus = _int(params, "genus", 2)
    if genus not in (1, 2):
        raise ManifestError("genus must be 1 or 2")
    return lollipop_sharp_index_check(genus, p)


def check_lollipop_tensor(params: dict) -> Verdict:
    p = _twice_odd(params, (6, 10))
    genus = _int(params, "genus", 1)
    if genus not in (1, 2):
        raise ManifestError("genus must be 1 or 2")
    return lollipop_tensor_check(p, genus)


def check_m_choice(params: dict) -> Verdict:
    p = _twice_odd(params, (6, 10))
    genus = _int(params, "genus", 1)
    if genus not in (1, 2):
        raise ManifestError("genus must be 1 or 2")
    rep = m_choice_report(p, genus)
    good = [k for k, v in rep["integral_by_variant"].items() if v]
    return Verdict("m-choice", bool(good), {**rep, "integral_variants": good})


def check_fkb_solid_torus(params: dict) -> Verdict:
    p = _p(params)
    J = fkb_ideal(SOLID_TORUS, p)
    return Verdict("fkb-solid-torus", J.is_unit_ideal(),
                   {"p": p, "generators": fkb_generators(SOLID_TORUS, p), "ideal": J})


def check_fkb_product(params: dict) -> Verdict:
    ctx = FactorizationContext(_r(params))
    parts = [fkb_product_check(N, ctx) for N in _manifolds(params)]
    return _combine("fkb-product", parts, r=ctx.r)


def check_fkb_monotonicity(params: dict) -> Verdict:
    p = _p(params)
    return _combine("fkb-monotonicity", [monotonicity_check(a, b, p) for a, b in monotonicity_pairs()],
                    p=p)


def check_fkb_basis_independence(params: dict) -> Verdict:
    p = _p(params)
    return _combine("fkb-basis-independence",
                    [basis_independence_check(N, p) for N in _manifolds(params)], p=p)


def check_fkb_closed(params: dict) -> Verdict:
    p = _p(params)
    Ns = [N for N in _manifolds(params) if not N.omega_twists and N.cable <= 1 and not N.core_color]
    return _combine("fkb-closed-crosscheck", [closed_crosscheck(N, p, range(-3, 4)) for N in Ns], p=p)


def check_oracle(params: dict) -> Verdict:
    p = _p(params)
    if p == 2:
        raise ManifestError("the TL oracle needs a Kauffman-bracket level (p > 2)")
    rep = oracle_check(p, _int(params, "max_color", 3))
    return Verdict("oracle-tl", rep["ok"], rep)


def check_invariant(params: dict) -> Verdict:
    """Computes I_p and theta_p of each presentation; passes when integral."""
    p = _p(params)
    th = theory(p)
    pres = _presentations(params, lambda: [])
    if not pres:
        raise ManifestError("invariant needs 'presentations'")
    rows = []
    for L in pres:
        I = invariant_I(L, th)
        rows.append({"presentation": L.to_json(), "name": str(L), "I": I,
                     "theta": invariant_theta(L, th), "integral": I.is_integral})
    return Verdict("invariant", all(r["integral"] for r in rows), {"p": p, "rows": rows})


@dataclass(frozen=True)
class CheckSpec:
    id: str
    run: Callable[[dict], Verdict]
    params: tuple[str, ...]
    summary: str


REGISTRY: dict[str, CheckSpec] = {c.id: c for c in [
    CheckSpec("kappa-factorization", check_kappa, ("r",), "kappa_p = i_r(kappa_2) j_r(kappa_r)"),
    CheckSpec("product-formula", check_product_formula,
              ("r", "lens_max", "chain_length", "presentations"),
              "I_p(M) = i_r(I'_2(M)) j_r(I_r(M)) on a presentation corpus"),
    CheckSpec("normalization", check_normalization, ("p",), "D^2, <S3>, <S1xS2>, kappa ratio"),
    CheckSpec("gram", check_gram, ("p", "family", "genus"), "Gram matrix is unimodular"),
    CheckSpec("two-theory-tensor", check_two_theory_tensor, (), "2-theory genus-2 Gram = B (x) B"),
    CheckSpec("bases-verify", check_bases, ("p", "genus"),
              "families pairwise unimodular, generator sweeps"),
    CheckSpec("u-element", check_u_element, ("r",), "u = (e_{r-3}+2)/(1+zeta_p) and F(u)"),
    CheckSpec("factorization", check_factorization, ("r",),
              "F unimodular, vacuum states, genus-2 isometry"),
    CheckSpec("h-divisibility", check_h_divisibility, ("p", "tripod"),
              "eyeglass and tripod divisible by h"),
    CheckSpec("lollipop-index", check_lollipop_index, ("p", "genus"), "[G#:G] = [W:G]"),
    CheckSpec("lollipop-tensor", check_lollipop_tensor, ("p", "genus"), "F(b) = 1 (x) b_r"),
    CheckSpec("m-choice", check_m_choice, ("p", "genus"), "integral readings of u^(m b)"),
    CheckSpec("fkb-solid-torus", check_fkb_solid_torus, ("p",), "J_p(solid torus) = (1)"),
    CheckSpec("fkb-product", check_fkb_product, ("r", "corpus"), "J_p = i_r(J_2) j_r(J_r)"),
    CheckSpec("fkb-monotonicity", check_fkb_monotonicity, ("p",), "N in N' => J(N') in J(N)"),
    CheckSpec("fkb-basis-independence", check_fkb_basis_independence, ("p", "corpus"),
              "J_p is independent of the basis"),
    CheckSpec("fkb-closed-crosscheck", check_fkb_closed, ("p", "corpus"),
              "pairings equal closed invariants of glued manifolds"),
    CheckSpec("oracle-tl", check_oracle, ("p", "max_color"),
              "loops, Hopf entries and thetas agree with Temperley-Lieb"),
    CheckSpec("invariant", check_invariant, ("p", "presentations"), "I_p and theta_p"),
]}


def validate(descriptor: Any) -> tuple[str, dict]:
    """Normalize a manifest entry to ``(id, params)`` or raise ManifestError."""
    if not isinstance(descriptor, dict):
        raise ManifestError(f"check descriptor must be an object, got {descriptor!r}")
    unknown_keys = set(descriptor) - {"id", "params", "tolerance", "label"}
    if unknown_keys:
        raise ManifestError(f"unknown descriptor keys {sorted(unknown_keys)}")
    cid = descriptor.get("id")
    if cid not in REGISTRY:
        raise ManifestError(f"unknown check id {cid!r}")
    if descriptor.get("tolerance", "exact") != "exact":
        raise ManifestError("only tolerance 'exact' is supported")
    params = descriptor.get("params", {})
    if not isinstance(params, dict):
        raise ManifestError("params must be an object")
    extra = set(params) - set(REGISTRY[cid].params)
    if extra:
        raise ManifestError(f"check {cid!r} does not take {sorted(extra)}")
    _prevalidate(cid, params)
    return cid, params


def _prevalidate(cid: str, params: dict) -> None:
    """Cheap validation of the parameters, without running the check."""
    if "p" in REGISTRY[cid].params and cid != "two-theory-tensor":
        _p(params)
    if "r" in REGISTRY[cid].params:
        _r(params)
    if cid == "gram":
        p, g = _p(params), _int(params, "genus", 1)
        if params.get("family") not in families_for(p, g):
            raise ManifestError(f"family {params.get('family')!r} is not available at p = {p}, "
                                f"genus {g}")
    if cid in ("h-divisibility",):
        _twice_odd(params)
    if cid in ("lollipop-index", "lollipop-tensor", "m-choice"):
        _twice_odd(params, (6, 10))
    if "presentations" in params:
        _presentations(params, list)
    if "corpus" in params:
        _manifolds(params)


def run_check(cid: str, params: dict) -> Verdict:
    return REGISTRY[cid].run(params)


