"""Command-line front end over the certificate machinery.

Each verb computes one family of exact certificates and prints them as JSON
(the only float anywhere is the explicitly labeled trigonometric rank
cross-check) or as a terse pass/fail table.  verify-all chains every family
at the configured primes and exits nonzero if any claim is refuted; its
output is deterministic byte for byte, so two runs with one config can be
compared with cmp.  The SKEINLAT_OUT environment variable, when set, names
a directory where verify-all also writes its bundle; nothing else is ever
written to disk.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .annulus import twist_matrix_v, twist_sq_matrix_vtilde
from .bracket import CapExceeded, LinkDiagram, divisibility_certificate, load_corpus
from .cyclotomic import _is_odd_prime
from .lattice import OLattice, lattice_equal, saturate
from .matrices import diagonal, mat_eq
from .planar import genus3_p5_report, gram_genus2, non_unimodular_witness
from .recoupling import count_spine_colorings, verlinde_float
from .torus import (
    DegeneracyError,
    RefutationError,
    TQFTParams,
    basis_e,
    basis_omega,
    basis_v,
    det_w_certificate,
    e_gram_closed,
    gram,
    modular_relation_scalar,
    omega,
    omega_product,
    s_matrix,
    twist_matrix_v_at,
    v_gram_closed,
    v_in_omega_span,
    vandermonde_certificate,
    verify_unimodular,
)

OUT_ENV = "SKEINLAT_OUT"

BASES_G1 = ("e", "omega", "v")
BASES_G2 = ("G", "A", "Av")
VARIANTS = ("z+2", "z+[2]")


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs shared by the verbs; construction rejects bad input."""

    p_list: tuple[int, ...] = (5, 7)
    genus_list: tuple[int, ...] = (1, 2, 3)
    cap_crossings: int = 16
    cap_cable: int = 8
    cap_iter: int = 32
    corpus: str | None = None
    out_dir: str | None = None
    emit: str = "json"

    def __post_init__(self) -> None:
        if not self.p_list:
            raise ValueError("need at least one p")
        for p in self.p_list:
            if not _is_odd_prime(p):
                raise ValueError(f"p must be an odd prime, got {p}")
        if not all(g >= 1 for g in self.genus_list):
            raise ValueError("genus entries must be >= 1")
        if any(g >= 2 for g in self.genus_list):
            low = [p for p in self.p_list if p < 5]
            if low:
                raise ValueError(f"genus >= 2 claims need p >= 5, got {low}")
        if min(self.cap_crossings, self.cap_cable, self.cap_iter) < 1:
            raise ValueError("caps must be positive")
        if self.emit not in ("json", "table"):
            raise ValueError(f"emit must be json or table, got {self.emit!r}")


def _jsonable(x):
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _as_table(obj) -> str:
    rows = obj if isinstance(obj, list) else [obj]
    lines = []
    for r in rows:
        if not isinstance(r, dict):
            lines.append(str(r))
            continue
        if "claim" in r or "ok" in r:
            ok = r.get("ok")
            mark = "  ok" if ok else ("FAIL" if ok is not None else "  --")
            bits = [mark]
            if "p" in r:
                bits.append(f"p={r['p']}")
            if "name" in r:
                bits.append(str(r["name"]))
            label = r.get("claim") or "  ".join(
                f"{k}={r[k]}" for k in r
                if k not in ("ok", "p", "name", "claim") and not isinstance(r[k], (dict, list))
            )
            bits.append(str(label))
            if r.get("skipped"):
                bits.append("(skipped)")
            lines.append("  ".join(bits))
        else:
            lines.extend(f"{k} = {v}" for k, v in r.items())
    return "\n".join(lines)


def _twist_op(params: TQFTParams):
    return diagonal([params.mu(i) for i in range(params.d)], params.ctx.zero)


def _basis_vectors(params: TQFTParams, name: str):
    return [x.coords for x in {"e": basis_e, "omega": basis_omega, "v": basis_v}[name](params)]


def _v_lattice(params: TQFTParams) -> OLattice:
    return OLattice.from_vectors(params.ctx, _basis_vectors(params, "v"))


def _guarded(claim: str, p: int, fn):
    """Run one certificate builder; a refutation becomes a failing entry
    instead of aborting the rest of the bundle."""
    try:
        return fn()
    except ArithmeticError as exc:
        return {"claim": claim, "p": p, "ok": False, "error": str(exc)}


# --- per-family certificate builders -------------------------------------


def polynomial_certs() -> list[dict]:
    certs = []
    ok = True
    try:
        for n in range(1, 13):
            twist_matrix_v(n)
    except (ValueError, ArithmeticError, AssertionError):
        ok = False
    certs.append(
        {"claim": "twist matrix on v-powers has integral entries up to size 12",
         "p": None, "ok": ok}
    )
    ok = True
    try:
        for n in range(1, 9):
            twist_sq_matrix_vtilde(n)
    except (ValueError, ArithmeticError, AssertionError):
        ok = False
    certs.append(
        {"claim": "squared-twist matrix on rescaled v-powers has integral "
                  "entries up to size 8",
         "p": None, "ok": ok}
    )
    return certs


def genus1_certs(params: TQFTParams) -> list[dict]:
    d, p = params.d, params.p
    certs = []
    grams = {name: gram(list({"e": basis_e, "omega": basis_omega, "v": basis_v}[name](params)))
             for name in BASES_G1}
    want = {"e": d * (d - 1), "omega": 0, "v": 0}
    for name in BASES_G1:
        cert = _guarded(
            f"genus-1 {name}-basis gram determinant exponent", p,
            lambda name=name: verify_unimodular(params, grams[name], name),
        )
        cert["claim"] = (
            f"genus-1 {name}-basis gram determinant is associate to "
            f"(1-q)^{want[name]}"
        )
        cert["ok"] = bool(cert.get("ok")) and cert.get("associate_exponent") == want[name]
        certs.append(cert)
    certs.append(
        {"claim": "closed-form e-basis gram equals the paired gram", "p": p,
         "ok": mat_eq(grams["e"], e_gram_closed(params))}
    )
    certs.append(
        {"claim": "closed-form v-basis gram equals the paired gram", "p": p,
         "ok": mat_eq(grams["v"], v_gram_closed(params))}
    )
    certs.append(_guarded("det W exponent", p, lambda: det_w_certificate(params)))
    certs.append(_guarded("vandermonde exponent", p, lambda: vandermonde_certificate(params)))
    certs.append(
        {"claim": "surgery element product form equals its definition", "p": p,
         "ok": omega_product(params) == omega(params)}
    )
    certs.append(_guarded(
        "v-powers and twist orbit related by integral change of basis", p,
        lambda: {
            "claim": "v-powers and twist orbit related by integral change of basis",
            "p": p,
            "ok": bool(v_in_omega_span(params)),
        },
    ))
    certs.append(_guarded(
        "regluing involution has integral matrix in the v-basis", p,
        lambda: {
            "claim": "regluing involution has integral matrix in the v-basis",
            "p": p,
            "ok": bool(s_matrix(params, basis="v")),
        },
    ))
    certs.append(_guarded(
        "twist matrix in the v-basis specializes integrally at the root", p,
        lambda: {
            "claim": "twist matrix in the v-basis specializes integrally at the root",
            "p": p,
            "ok": all(x.is_integral() for row in twist_matrix_v_at(params) for x in row),
        },
    ))
    certs.append(_jsonable_scalar(modular_relation_scalar(params)))
    return certs


def _jsonable_scalar(cert: dict) -> dict:
    out = dict(cert)
    out["scalar"] = out["scalar"].to_json()
    return out


def lattice_certs(params: TQFTParams, cap_iter: int) -> list[dict]:
    ctx, p = params.ctx, params.p
    w_lat = OLattice.from_vectors(ctx, _basis_vectors(params, "omega"))
    v_lat = _v_lattice(params)
    certs = [
        {"claim": "twist-orbit lattice equals the v-power lattice", "p": p,
         "rank": w_lat.rank, "ok": lattice_equal(w_lat, v_lat)}
    ]
    rep = saturate(
        ctx, _basis_vectors(params, "e"),
        [_twist_op(params), s_matrix(params)], cap=cap_iter,
    )
    certs.append(
        {"claim": "e-basis seed saturates to the v-power lattice within five rounds",
         "p": p, "iterations": rep.iterations,
         "ok": rep.stabilized and rep.iterations <= 5
               and lattice_equal(rep.lattice, v_lat)}
    )
    return certs


def rank_certs(p: int, genus_list) -> list[dict]:
    certs = []
    for g in sorted(set(genus_list)):
        n = count_spine_colorings(g, p)
        vf = verlinde_float(g, p)
        certs.append(
            {"claim": f"genus-{g} rank matches the trigonometric estimate",
             "p": p, "genus": g, "rank": n, "verlinde_float": vf,
             "ok": abs(vf - n) <= 1e-6}
        )
    return certs


def genus2_certs(p: int) -> list[dict]:
    certs = []
    for basis in BASES_G2:
        claim = f"genus-2 {basis}-basis gram determinant exponent"

        def build(basis=basis, claim=claim):
            rep = gram_genus2(p, basis)
            cert = rep.to_json()
            cert["claim"] = (
                f"genus-2 {basis}-basis gram determinant is associate to "
                f"(1-q)^{rep.expected_exponent}"
            )
            cert["ok"] = (
                rep.unit_cofactor
                and rep.associate_exponent == rep.expected_exponent
                and rep.unimodular == (basis == "Av")
            )
            return cert

        certs.append(_guarded(claim, p, build))
    return certs


def genus3_certs() -> list[dict]:
    certs = []
    for color in ("v", "omega"):
        claim = f"genus-3 {color}-recolored gram determinant valuation"

        def build(color=color, claim=claim):
            rep = genus3_p5_report(color)
            wit = non_unimodular_witness(5, 3, rep)
            cert = rep.to_json()
            cert["witness"] = wit
            cert["claim"] = (
                f"genus-3 {color}-recolored gram determinant has valuation "
                "one over the real subring"
            )
            cert["ok"] = (
                rep.associate_exponent == 1
                and rep.unit_cofactor
                and rep.plus_subring is True
                and wit is not None
            )
            return cert

        certs.append(_guarded(claim, 5, build))
    return certs


def corpus_certs(corpus: str | None, cap_crossings: int) -> list[dict]:
    certs = []
    for entry in load_corpus(corpus):
        diagram = LinkDiagram.from_json(entry)
        for variant in VARIANTS:
            try:
                cert = divisibility_certificate(
                    diagram, variant, max_crossings=cap_crossings
                )
                cert = {"name": entry["name"], **cert}
            except CapExceeded:
                cert = {
                    "name": entry["name"],
                    "claim": f"(1+A)^mu divides <L({variant})>",
                    "skipped": True,
                    "reason": f"more than {cap_crossings} crossings",
                    "ok": True,
                }
            certs.append(cert)
    return certs


def bundle(config: RunConfig) -> list[dict]:
    certs = polynomial_certs()
    for p in config.p_list:
        params = TQFTParams(p)
        if 1 in config.genus_list:
            certs.extend(genus1_certs(params))
            certs.extend(lattice_certs(params, config.cap_iter))
        certs.extend(rank_certs(p, config.genus_list))
        if 2 in config.genus_list:
            certs.extend(genus2_certs(p))
    if 3 in config.genus_list and 5 in config.p_list:
        certs.extend(genus3_certs())
    certs.extend(corpus_certs(config.corpus, config.cap_crossings))
    return certs


# --- verbs ----------------------------------------------------------------


def cmd_genus1(args) -> tuple[int, object]:
    RunConfig(p_list=(args.p,), genus_list=(1,))
    params = TQFTParams(args.p)
    basis = {"e": basis_e, "omega": basis_omega, "v": basis_v}[args.basis](params)
    g = gram(list(basis))
    if args.emit == "gram":
        return 0, {"p": args.p, "basis": args.basis,
                   "gram": [[x.to_json() for x in row] for row in g]}
    cert = verify_unimodular(params, g, args.basis)
    return (0 if cert["ok"] else 1), cert


def cmd_genus2(args) -> tuple[int, object]:
    RunConfig(p_list=(args.p,), genus_list=(2,))
    rep = gram_genus2(args.p, args.basis)
    out = rep.to_json()
    wit = non_unimodular_witness(args.p, 2, rep)
    if wit is not None:
        out["witness"] = wit
    return (0 if rep.unit_cofactor else 1), out


def cmd_genus3p5(args) -> tuple[int, object]:
    rep = genus3_p5_report(args.color)
    out = rep.to_json()
    out["witness"] = non_unimodular_witness(5, 3, rep)
    return (0 if rep.unit_cofactor else 1), out


def cmd_rank(args) -> tuple[int, object]:
    RunConfig(p_list=(args.p,), genus_list=(args.genus,))
    n = count_spine_colorings(args.genus, args.p)
    vf = verlinde_float(args.genus, args.p)
    ok = abs(vf - n) <= 1e-6
    return (0 if ok else 1), {"p": args.p, "genus": args.genus, "rank": n,
                              "verlinde_float": vf, "ok": ok}


def cmd_bracket(args) -> tuple[int, object]:
    certs = corpus_certs(args.corpus, args.cap_crossings)
    code = 0 if all(c["ok"] for c in certs) else 1
    return code, certs


def cmd_stabilize(args) -> tuple[int, object]:
    RunConfig(p_list=(args.p,), genus_list=(1,), cap_iter=args.cap_iter)
    params = TQFTParams(args.p)
    ctx = params.ctx
    if args.seed == "omega":
        seed = [omega(params).coords]
    else:
        seed = _basis_vectors(params, args.seed)
    op_table = {"t": lambda: _twist_op(params), "s": lambda: s_matrix(params)}
    names = [s.strip() for s in args.ops.split(",") if s.strip()]
    if not names or any(n not in op_table for n in names):
        raise ValueError(f"ops must be a comma list drawn from t, s; got {args.ops!r}")
    rep = saturate(ctx, seed, [op_table[n]() for n in names], cap=args.cap_iter)
    out = {
        "p": args.p,
        "seed": args.seed,
        "ops": names,
        "iterations": rep.iterations,
        "stabilized": rep.stabilized,
        "rank": rep.lattice.rank,
        "den": rep.lattice.den,
        "hnf": [list(r) for r in rep.lattice.basis],
        "matches_v_lattice": lattice_equal(rep.lattice, _v_lattice(params)),
    }
    return (0 if rep.stabilized else 1), out


def cmd_verify_all(args) -> tuple[int, object]:
    config = RunConfig(
        p_list=tuple(int(x) for x in args.p.split(",")),
        cap_crossings=args.cap_crossings,
        cap_iter=args.cap_iter,
        corpus=args.corpus,
        out_dir=os.environ.get(OUT_ENV),
        emit=args.emit,
    )
    certs = _jsonable(bundle(config))
    ok = all(c["ok"] for c in certs)
    if config.out_dir:
        os.makedirs(config.out_dir, exist_ok=True)
        path = os.path.join(config.out_dir, "verify_all.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(certs, sort_keys=True, indent=2))
            fh.write("\n")
    return (0 if ok else 1), certs


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skeinlat",
        description="exact certificates for skein-module lattices at odd primes",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    def emit_flag(parser):
        parser.add_argument("--emit", choices=("json", "table"), default="json")

    g1 = sub.add_parser("genus1", help="genus-1 gram certificate for one basis")
    g1.add_argument("--p", type=int, required=True)
    g1.add_argument("--basis", choices=BASES_G1, default="e")
    g1.add_argument("--emit", choices=("gram", "certificate"), default="certificate")
    g1.set_defaults(func=cmd_genus1)

    g2 = sub.add_parser("genus2", help="genus-2 gram determinant report")
    g2.add_argument("--p", type=int, required=True)
    g2.add_argument("--basis", choices=BASES_G2, default="A")
    emit_flag(g2)
    g2.set_defaults(func=cmd_genus2)

    g3 = sub.add_parser("genus3p5", help="genus-3 report at p = 5")
    g3.add_argument("--color", choices=("v", "omega"), default="v")
    emit_flag(g3)
    g3.set_defaults(func=cmd_genus3p5)

    rk = sub.add_parser("rank", help="exact rank with float cross-check")
    rk.add_argument("--p", type=int, required=True)
    rk.add_argument("--genus", type=int, required=True)
    emit_flag(rk)
    rk.set_defaults(func=cmd_rank)

    br = sub.add_parser("bracket", help="divisibility certificates over the corpus")
    br.add_argument("--corpus", metavar="FILE", default=None)
    br.add_argument("--cap-crossings", type=int, default=16)
    emit_flag(br)
    br.set_defaults(func=cmd_bracket)

    st = sub.add_parser("stabilize", help="saturate a seed lattice under operators")
    st.add_argument("--p", type=int, required=True)
    st.add_argument("--seed", choices=BASES_G1, default="e")
    st.add_argument("--ops", default="t,s", help="comma list from {t,s}")
    st.add_argument("--cap-iter", type=int, default=32)
    emit_flag(st)
    st.set_defaults(func=cmd_stabilize)

    va = sub.add_parser("verify-all", help="run every certificate family")
    va.add_argument("--p", default="5,7", help="comma list of odd primes")
    va.add_argument("--corpus", metavar="FILE", default=None)
    va.add_argument("--cap-crossings", type=int, default=16)
    va.add_argument("--cap-iter", type=int, default=32)
    emit_flag(va)
    va.set_defaults(func=cmd_verify_all)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, payload = args.func(args)
    except (RefutationError, DegeneracyError) as exc:
        print(f"refuted: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = _jsonable(payload)
    if getattr(args, "emit", "json") == "table":
        print(_as_table(payload))
        if isinstance(payload, list):
            bad = sum(1 for c in payload if not c.get("ok", True))
            print(f"{len(payload)} certificates, {bad} failing")
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
