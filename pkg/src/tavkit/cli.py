"""Command-line entry point: ``tavkit <command> ...``.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from . import __version__
from . import groups as grp
from .epi import Epimorphism, EpimorphismError, find_epimorphisms
from .groups import FiniteGroup, GroupError
from .groupspec import build_group, split_args
from .harness import (HarnessError, induced_block_check, modp_formula, pgroup_filtration,
                      tav_membership, tav_order_bounded, tav_scan, verify_central,
                      verify_corollary_37, verify_cyclic, verify_dihedral, verify_modp)
from .knots import DEFAULT_CORPUS, PresentationError, alexander_polynomial, knot_names, load_knot
from .laurent import UnitMode
from .reps import (Representation, RepresentationError, compose_rep, coset_rep, regular_rep,
                   tensor_rep, trivial_rep)
from .rings import parse_ring
from .wada import WadaError, audit_columns, twisted_alexander

log = logging.getLogger("tavkit")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class _Timeout(Exception):
    pass


class _Usage(Exception):
    pass


@dataclass
class RunConfig:
    threads: int = 1
    seed: int = 0
    output: str = "text"
    max_order: int = grp.MAX_ORDER
    timeout: float | None = None
    timings: bool = True

    def __post_init__(self):
        if self.threads < 1:
            raise _Usage("threads must be >= 1")
        if not 1 <= self.max_order <= grp.MAX_ORDER:
            raise _Usage(f"group order cap must be in 1..{grp.MAX_ORDER}")
        if not 0 <= self.seed < 2 ** 64:
            raise _Usage("seed must be a 64-bit unsigned integer")


@contextmanager
def _deadline(seconds: float | None):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k not in ("seconds", "timings")}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _emit(cfg: RunConfig, payload, text: str | None = None) -> None:
    if cfg.output == "json":
        if not cfg.timings:
            payload = _strip_timings(payload)
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text if text is not None else json.dumps(payload, sort_keys=True, indent=2))


# -- argument helpers --------------------------------------------------------------

def _group(spec: str, cfg: RunConfig) -> FiniteGroup:
    G = build_group(spec)
    if G.order > cfg.max_order:
        raise _Usage(f"group order {G.order} exceeds the cap {cfg.max_order}")
    return G


def _subgroup(G: FiniteGroup, spec: str):
    """``derived``, ``center``, ``trivial`` or element labels separated by ';'."""
    if spec == "derived":
        return grp.commutator_subgroup(G)
    if spec == "center":
        return grp.center(G)
    if spec == "trivial":
        return G.trivial()
    try:
        gens = [G.index(lab.strip()) for lab in spec.split(";")]
    except (KeyError, ValueError):
        raise _Usage(f"unknown element label in {spec!r}; labels: {G.labels}") from None
    return G.subgroup(G.generated(gens))


def parse_rep(spec: str, G: FiniteGroup, ring) -> Representation:
    """regular | trivial | coset:H | quotient:N | tensor(A, B)."""
    s = spec.strip()
    if s == "regular":
        return regular_rep(G, ring)
    if s == "trivial":
        return trivial_rep(G, ring)
    if s.startswith("coset:"):
        return coset_rep(G, _subgroup(G, s[6:]), ring)
    if s.startswith("quotient:"):
        N = _subgroup(G, s[9:])
        if not N.is_normal():
            raise _Usage(f"{s[9:]!r} does not generate a normal subgroup")
        Q, pi = grp.quotient(G, N)
        return compose_rep(regular_rep(Q, ring), pi)
    if s.startswith("tensor(") and s.endswith(")"):
        parts = split_args(s[7:-1])
        if len(parts) != 2:
            raise _Usage("tensor takes two representations")
        return tensor_rep(parse_rep(parts[0], G, ring), parse_rep(parts[1], G, ring))
    raise _Usage(f"unknown representation {spec!r}")


def _epi(K, G, args) -> Epimorphism:
    fs = find_epimorphisms(K, G, "first", seed=args.seed)
    if not fs:
        raise HarnessError(f"no epimorphism from G({K.name}) onto {G.name}")
    return fs[0]


def _report_exit(cfg: RunConfig, rep) -> int:
    text = (f"{rep.claim}: {rep.status}\n  lhs  {rep.lhs}\n  rhs  {rep.rhs}\n  unit {rep.unit}"
            + "".join(f"\n  note {n}" for n in rep.notes))
    _emit(cfg, rep.to_json(), text)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- commands ----------------------------------------------------------------------

def cmd_knot(args, cfg):
    if args.action == "list":
        names = knot_names()
        _emit(cfg, {"knots": names}, "\n".join(names))
        return EXIT_OK
    if not args.name:
        raise _Usage("knot show needs a knot name or file")
    K = load_knot(args.name)
    data = K.to_json()
    _emit(cfg, data, str(K))
    return EXIT_OK


def cmd_alex(args, cfg):
    K = load_knot(args.knot)
    poly = alexander_polynomial(K)
    _emit(cfg, {"knot": K.name, "alexander": str(poly)}, str(poly))
    return EXIT_OK


def cmd_group(args, cfg):
    G = _group(args.spec, cfg)
    D = grp.commutator_subgroup(G)
    w, _ = grp.weight_le_one(G)
    q = grp.is_p_group(D)
    data = {"spec": args.spec, "name": G.name, "order": G.order, "abelian": G.is_abelian(),
            "derived_order": len(D), "weight_one": w,
            "derived_p_group": q if q is not None else False}
    lines = [f"{G.name}: order {G.order}, commutator subgroup of order {len(D)}"]
    if args.tav:
        tav = grp.is_tav_group(G)
        data["tav"] = tav
        data["seed"] = grp.is_seed(G) if w else None
        reasons = []
        if not w:
            reasons.append("weight greater than one")
        if q == "trivial":
            reasons.append("abelian")
        elif q is not None:
            reasons.append(f"commutator subgroup is a {q}-group")
        why = "; ".join(reasons) or "weight one with non-p-group commutator subgroup"
        data["reason"] = why
        lines.append(f"TAV group: {'yes' if tav else 'no'} ({why})")
        if w and q is not None:
            form = modp_formula(G)
            data["formula"] = form.text()
            lines.append(f"formula: {form.text()}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_epi(args, cfg):
    K = load_knot(args.knot)
    G = _group(args.group, cfg)
    mode = "count" if args.count else ("all" if args.all else "first")
    res = find_epimorphisms(K, G, mode, modulo_inner=args.modulo_inner, seed=args.seed,
                            threads=cfg.threads)
    if mode == "count":
        _emit(cfg, {"knot": K.name, "group": G.name, "modulo_inner": args.modulo_inner,
                    "count": res}, str(res))
        return EXIT_OK
    for f in res:
        f.verify()
    data = {"knot": K.name, "group": G.name, "modulo_inner": args.modulo_inner,
            "epimorphisms": [f.to_json()["images"] for f in res]}
    text = "\n".join("  ".join(f"{k}->{v}" for k, v in e.items()) for e in data["epimorphisms"])
    _emit(cfg, data, text or "no epimorphism")
    return EXIT_OK


def cmd_tap(args, cfg):
    K = load_knot(args.knot)
    G = _group(args.group, cfg)
    R = parse_ring(args.ring)
    rep = parse_rep(args.rep, G, R)
    f = _epi(K, G, args)
    if args.audit_columns:
        ok, vals = audit_columns(K, f, rep, UnitMode.FULL_UNITS)
        data = {"consistent": ok, "columns": [v.to_json() for v in vals]}
        text = "\n".join(f"column {v.column + 1}: {v.normalized}" for v in vals)
        _emit(cfg, data, text + f"\nconsistent: {ok}")
        return EXIT_OK if ok else EXIT_FAIL
    col = None if args.column is None else args.column - 1
    T = twisted_alexander(K, f, rep, col)
    data = T.to_json()
    data["images"] = f.to_json()["images"]
    _emit(cfg, data, str(T.normalized))
    return EXIT_OK


def cmd_verify(args, cfg):
    K = load_knot(args.knot)
    claim = args.claim
    if claim == "modp":
        G = _group(args.group, cfg)
        return _report_exit(cfg, verify_modp(K, _epi(K, G, args), _subgroup(G, args.subgroup)))
    if claim == "dihedral":
        if args.group is None and args.pn is None:
            raise _Usage("verify dihedral needs --pn or --group")
        G = _group(args.group or f"dihedral:{args.pn}", cfg)
        return _report_exit(cfg, verify_dihedral(K, _epi(K, G, args)))
    if claim == "cyclic":
        if args.m is None:
            raise _Usage("verify cyclic needs --m")
        return _report_exit(cfg, verify_cyclic(K, args.m, args.p))
    if claim == "cor37":
        G = _group(args.group, cfg)
        return _report_exit(cfg, verify_corollary_37(K, _epi(K, G, args)))
    if claim == "central":
        G1 = _group(args.group, cfg)
        if args.k is None or args.n is None:
            raise _Usage("verify central needs --k and --n")
        return _report_exit(cfg, verify_central(K, G1, args.k, args.n, _epi(K, G1, args)))
    raise _Usage(f"unknown claim {claim!r}")


def cmd_tav(args, cfg):
    if args.action == "scan":
        knots = args.knots.split(",") if args.knots else list(DEFAULT_CORPUS)
        res = tav_scan(args.max_order or 23, knots)
        lines = [f"groups: {res['groups']}", f"weight one: {res['weight_one']}",
                 f"weight-one groups with p-group commutator: {res['weight_one_all_p_group_derived']}",
                 f"verifications: {res['verifications']} all pass: {res['all_pass']}",
                 f"TAV groups: {res['tav_groups'] or 'none'}"]
        if res["coincidence"]:
            c = res["coincidence"]
            lines.append(f"C3:D3 {c['C3:D3']}  C3xD3 {c['C3xD3']}  identical: "
                         f"{c['same_signature'] and c['same_values']}")
        _emit(cfg, res, "\n".join(lines))
        ok = res["all_pass"] and res["weight_one_all_p_group_derived"]
        return EXIT_OK if ok else EXIT_FAIL
    if not args.knot:
        raise _Usage(f"tav {args.action} needs --knot")
    K = load_knot(args.knot)
    if args.action == "check":
        if not args.group:
            raise _Usage("tav check needs --group")
        G = _group(args.group, cfg)
        ok, wit = tav_membership(K, G)
        data = {"knot": K.name, "group": G.name, "member": ok,
                "witness": wit.to_json()["images"] if wit else None}
        _emit(cfg, data, f"{K.name} admits {G.name} as a TAV group: {ok}")
        return EXIT_OK
    res = tav_order_bounded(K, args.max_order or 23)
    text = f"order {res['order']} ({res['group']})" if res["order"] else f"order {res['bound']}"
    _emit(cfg, res, text)
    return EXIT_OK


def cmd_filtration(args, cfg):
    H = _group(args.group, cfg)
    chain = pgroup_filtration(H, args.p)
    data = {"group": H.name, "p": args.p, "dims": chain.dims, "strict_terms": chain.strict_terms,
            "verified": True, "change_of_basis": chain.basis.tolist()}
    lines = [f"{H.name} over F_{args.p}: dims {chain.dims} ({chain.strict_terms} strict terms), "
             "quotients trivial"]
    if args.inside:
        G = _group(args.inside, cfg)
        Hs = _subgroup(G, args.subgroup or "derived")
        ok, _ = induced_block_check(G, Hs, args.p)
        data["induced_blocks"] = ok
        lines.append(f"induced to {G.name}: diagonal blocks are the coset rep: {ok}")
        if not ok:
            _emit(cfg, data, "\n".join(lines))
            return EXIT_FAIL
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tavkit", description="Twisted Alexander polynomials of "
                                "knots for finite-group representations.")
    p.add_argument("--version", action="version", version=f"tavkit {__version__}")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--no-timings", action="store_true", help="drop timing fields from JSON")
    p.add_argument("--threads", type=int, default=None, help="worker threads (env TAVKIT_THREADS)")
    p.add_argument("--seed", type=int, default=0, help="seed for search shuffles")
    p.add_argument("--max-group-order", type=int, default=grp.MAX_ORDER)
    p.add_argument("--timeout", type=float, default=None, help="seconds before giving up")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("knot", help="bundled knots")
    k.add_argument("action", choices=["list", "show"])
    k.add_argument("name", nargs="?")
    k.set_defaults(func=cmd_knot)

    a = sub.add_parser("alex", help="classical Alexander polynomial")
    a.add_argument("knot")
    a.set_defaults(func=cmd_alex)

    g = sub.add_parser("group", help="build a group from a spec")
    g.add_argument("action", choices=["build"])
    g.add_argument("spec")
    g.add_argument("--tav", action="store_true", help="report TAV status")
    g.set_defaults(func=cmd_group)

    e = sub.add_parser("epi", help="epimorphism search")
    e.add_argument("action", choices=["search"])
    e.add_argument("--knot", required=True)
    e.add_argument("--group", required=True)
    mx = e.add_mutually_exclusive_group()
    mx.add_argument("--all", action="store_true")
    mx.add_argument("--count", action="store_true")
    e.add_argument("--modulo-inner", action="store_true")
    e.set_defaults(func=cmd_epi)

    t = sub.add_parser("tap", help="twisted Alexander polynomial")
    t.add_argument("--knot", required=True)
    t.add_argument("--group", required=True)
    t.add_argument("--rep", default="regular")
    t.add_argument("--ring", default="Z")
    t.add_argument("--column", type=int, default=None, help="deleted column (1-based)")
    t.add_argument("--audit-columns", action="store_true")
    t.set_defaults(func=cmd_tap)

    v = sub.add_parser("verify", help="check a closed-form statement")
    v.add_argument("claim", choices=["modp", "dihedral", "cyclic", "cor37", "central"])
    v.add_argument("--knot", required=True)
    v.add_argument("--group")
    v.add_argument("--subgroup", default="derived", help="derived | center | trivial | labels;...")
    v.add_argument("--pn", type=int, help="dihedral degree p^n")
    v.add_argument("--m", type=int)
    v.add_argument("--p", type=int, help="prime (cyclic: omit for exact cyclotomic check)")
    v.add_argument("--k", type=int)
    v.add_argument("--n", type=int)
    v.set_defaults(func=cmd_verify)

    tv = sub.add_parser("tav", help="TAV groups")
    tv.add_argument("action", choices=["check", "scan", "order"])
    tv.add_argument("--knot")
    tv.add_argument("--group")
    tv.add_argument("--knots", help="comma-separated corpus for scan")
    tv.add_argument("--max-order", type=int, default=None)
    tv.set_defaults(func=cmd_tav)

    f = sub.add_parser("filtration", help="p-group filtration of F_p[H]")
    f.add_argument("--group", required=True)
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--inside", help="ambient group spec for the induced block check")
    f.add_argument("--subgroup", help="subgroup of the ambient group (default derived)")
    f.set_defaults(func=cmd_filtration)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        threads = args.threads if args.threads is not None else int(os.environ.get("TAVKIT_THREADS", "1"))
        cfg = RunConfig(threads=threads, seed=args.seed, output="json" if args.json else "text",
                        max_order=args.max_group_order, timeout=args.timeout,
                        timings=not args.no_timings)
        os.environ["TAVKIT_THREADS"] = str(cfg.threads)
        log.debug("config %s", cfg)
        with _deadline(cfg.timeout):
            return args.func(args, cfg)
    except _Timeout:
        print("error: timed out", file=sys.stderr)
        return EXIT_TIMEOUT
    except (_Usage, GroupError, KeyError, ValueError) as exc:
        # HarnessError, WadaError, PresentationError and friends are ValueErrors
        if isinstance(exc, (HarnessError, WadaError, EpimorphismError, RepresentationError,
                            PresentationError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
