"""Command-line front end.

Exit codes: 0 when every check passes, 1 when an identity is falsified,
2 on malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import __version__
from .arith import FieldConfig, prime_power_base
from .bidet import (
    BideterminantIndex,
    InconsistentStraightening,
    Straightener,
    factor_basis_report,
    assemble_factor_basis,
    minor,
    trace_formula,
)
from .dist import (
    all_alphas,
    char0_annihilation,
    char0_witness,
    commutation_suite,
    idempotent_suite,
    kernel_annihilation,
    kernel_witness,
    parse_module,
    parse_u,
    random_u,
    verify_commutation,
)
from .superpoly import y_ring
from .tableaux import Tableau
from .weights import (
    Weight,
    WeightIdeal,
    admissible_decomposition,
    congruent_predecessor,
    dominance_leq,
    dominant_strong_below,
    is_dominant,
    special_filtration,
    strong_leq,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    m: int | None
    n: int | None
    field: FieldConfig
    seed: int
    jobs: int
    out: str | None
    fmt: str
    timing: bool
    lmax: int
    kmax: int


def _field_from(args) -> FieldConfig:
    if args.rational and args.p is not None:
        raise InputError("--rational and --p are mutually exclusive")
    if args.p is None:
        if args.r != 1:
            raise InputError("--r needs --p")
        return FieldConfig.rational()
    try:
        return FieldConfig(args.p, args.r)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _config(args) -> RunConfig:
    for name in ("m", "n"):
        v = getattr(args, name)
        if v is not None and v < 0:
            raise InputError(f"--{name} must be nonnegative")
    if args.jobs < 1 or args.lmax < 0 or args.kmax < 0:
        raise InputError("--jobs must be positive, --lmax and --kmax nonnegative")
    return RunConfig(args.m, args.n, _field_from(args), args.seed, args.jobs,
                     args.out, args.format, args.timing, args.lmax, args.kmax)


def _weight(text: str, cfg: RunConfig | None = None) -> Weight:
    try:
        w = Weight.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if cfg is not None:
        if cfg.m is not None and w.m != cfg.m or cfg.n is not None and w.n != cfg.n:
            raise InputError(f"weight {text} does not fit GL({cfg.m}|{cfg.n})")
    return w


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("|", ",").split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def _tableau(text: str) -> Tableau:
    if not text.strip():
        return Tableau(())
    rows = []
    for row in text.split("/"):
        if "," in row:
            rows.append(tuple(int(x) for x in row.split(",")))
        else:
            rows.append(tuple(int(x) for x in row))
    try:
        return Tableau(tuple(rows))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _mn(cfg: RunConfig, default: tuple[int, int] = (1, 1)) -> tuple[int, int]:
    m = cfg.m if cfg.m is not None else default[0]
    n = cfg.n if cfg.n is not None else default[1]
    if m + n < 1:
        raise InputError("need m + n >= 1")
    return m, n


def _q(args, cfg: RunConfig) -> int:
    q = args.q
    if q is None:
        if cfg.field.characteristic == 0:
            raise InputError("--q (or --p/--r) is required")
        return cfg.field.q
    try:
        p, _ = prime_power_base(q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if p < 3:
        raise InputError("q must be a power of an odd prime")
    if cfg.field.characteristic and cfg.field.characteristic != p:
        raise InputError(f"--q {q} is not a power of --p {cfg.field.characteristic}")
    return q


# ---------------------------------------------------------------------------
# output

def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v)


def render(records: Sequence[dict], fmt: str, plain: str | None = None) -> str:
    if fmt == "auto":
        if plain is not None:
            return plain + "\n"
        fmt = "json"
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if fmt == "csv":
        keys: list[str] = []
        for r in records:
            keys.extend(k for k in r if k not in keys)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _cell(r.get(k)) for k in keys})
        return buf.getvalue()
    if plain is not None:
        return plain + "\n"
    return "".join(" ".join(f"{k}={_cell(v)}" for k, v in r.items()) + "\n" for r in records)


def _status(records: Iterable[dict]) -> int:
    return EXIT_FAIL if any(r.get("status") == "fail" for r in records) else EXIT_OK


# ---------------------------------------------------------------------------
# weights

def cmd_weights(args, cfg: RunConfig):
    action = args.action
    if action == "leq":
        mu, lam = _weight(args.mu, cfg), _weight(args.lam, cfg)
        try:
            ok = strong_leq(mu, lam) if args.strong else dominance_leq(mu, lam)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        rec = {"mu": str(mu), "lambda": str(lam), "order": "strong" if args.strong else "dominance",
               "leq": ok}
        return [rec], "true" if ok else "false"
    if action == "dominant":
        lam = _weight(args.lam, cfg)
        ok = is_dominant(lam)
        return [{"lambda": str(lam), "dominant": ok}], "true" if ok else "false"
    if action == "decompose":
        gens = [_weight(g, cfg) for g in args.gens]
        try:
            ideal = WeightIdeal(gens)
            pieces = admissible_decomposition(ideal, cfg.lmax)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        recs = [
            {"a": pair.a, "b": pair.b, "generator": str(ideal.generators[pair.generator]),
             "shift": pair.shift, "weights": [str(w) for w in members]}
            for pair, members in pieces
        ]
        return recs, None
    if action == "filtration":
        gens = [_weight(g, cfg) for g in args.gens]
        closed: set[Weight] = set()
        try:
            for g in gens:
                closed.update(dominant_strong_below(g))
            order = special_filtration(closed)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        recs = [{"step": i, "weight": str(w)} for i, w in enumerate(order)]
        return recs, "\n".join(str(w) for w in order)
    if action == "pred":
        if args.random:
            return _pred_suite(args, cfg), None
        if args.lam is None or args.alpha is None or args.q is None:
            raise InputError("pred needs --lambda, --alpha and --q (or --random N)")
        lam = _weight(args.lam, cfg)
        alpha = _ints(args.alpha)
        try:
            mu = congruent_predecessor(lam, alpha, args.q)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        rec = _pred_record(lam, alpha, args.q, mu)
        return [rec], str(mu) if rec["status"] == "pass" else None
    raise InputError(f"unknown weights action {action}")


def _pred_record(lam: Weight, alpha, q: int, mu: Weight) -> dict:
    ok = (
        is_dominant(mu) and dominance_leq(mu, lam)
        and all((x - a) % q == 0 for x, a in zip(mu, alpha))
    )
    return {"lambda": str(lam), "alpha": list(alpha), "q": q, "mu": str(mu),
            "status": "pass" if ok else "fail"}


def random_pred_instance(rng: random.Random, m: int, n: int, q: int):
    plus = sorted((rng.randint(-6, 8) for _ in range(m)), reverse=True)
    minus = sorted((rng.randint(-6, 8) for _ in range(n)), reverse=True)
    lam = Weight.of(plus, minus)
    alpha = [rng.randrange(q) for _ in range(m + n)]
    # fix the last coordinate so that |alpha| = |lambda| mod q
    alpha[-1] = (alpha[-1] + lam.size - sum(alpha)) % q
    return lam, tuple(alpha)


def _pred_suite(args, cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    qs = [args.q] if args.q else [3, 5, 9]
    recs = []
    for _ in range(args.random):
        m = cfg.m or rng.randint(1, 3)
        n = cfg.n or rng.randint(1, 3)
        q = rng.choice(qs)
        lam, alpha = random_pred_instance(rng, m, n, q)
        recs.append(_pred_record(lam, alpha, q, congruent_predecessor(lam, alpha, q)))
    return recs


# ---------------------------------------------------------------------------
# bidet

def cmd_bidet(args, cfg: RunConfig):
    action = args.action
    if action in ("basis", "rank"):
        lam = _weight(args.lam, cfg)
        if not is_dominant(lam):
            raise InputError(f"{lam} is not dominant")
        rep = factor_basis_report(lam, cfg.field, timing=cfg.timing)
        rep["status"] = "pass" if rep["rank"] == rep["count"] else "fail"
        if action == "basis" and args.list:
            elements, _ = assemble_factor_basis(lam, with_images=False)
            rep["elements"] = [e.to_json() for e in elements]
        if action == "rank":
            return [rep], str(rep["rank"])
        return [rep], None
    if action == "straighten":
        mu = _weight(args.mu, cfg)
        try:
            idx = BideterminantIndex(
                mu, args.a, args.b,
                _tableau(args.rows_plus), _tableau(args.cols_plus),
                _tableau(args.rows_minus), _tableau(args.cols_minus),
            )
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        try:
            expansion = Straightener(mu, args.a, args.b, cfg.field)(idx)
            status = "pass"
        except InconsistentStraightening:
            expansion, status = {}, "fail"
        rec = {
            "index": idx.to_json(), "field": cfg.field.name, "status": status,
            "expansion": [{"coeff": str(c), **k.to_json()} for k, c in expansion.items()],
        }
        return [rec], None
    if action == "trace-check":
        recs = []
        for size in range(1, args.size + 1):
            ring = y_ring(size, 0)
            for k in range(1, size + 1):
                bad = None
                for rows in combinations(range(1, size + 1), k):
                    for cols in combinations(range(1, size + 1), k):
                        if trace_formula(ring, 1, rows, cols) != minor(ring, 1, rows, cols):
                            bad = {"rows": list(rows), "cols": list(cols)}
                            break
                    if bad:
                        break
                rec = {"l": size, "k": k, "status": "pass" if bad is None else "fail"}
                if bad:
                    rec["counterexample"] = bad
                recs.append(rec)
        return recs, None
    raise InputError(f"unknown bidet action {action}")


# ---------------------------------------------------------------------------
# dist

def _commute_chunk(payload):
    q, module, m, n, i, j, clause, t, a, target = payload
    if clause == "1":
        return [verify_commutation(q, i, j, t, a, module, m, n, "1", s=s, target=target).to_json()
                for s in range(1, m + n + 1) if s not in (i, j)]
    return [verify_commutation(q, i, j, t, a, module, m, n, clause, target=target).to_json()]


def _commute_all(q, module, m, n, jobs: int) -> list[dict]:
    if jobs == 1:
        return [r.to_json() for r in commutation_suite(q, module, m, n)]
    # shard by root vector; executor.map keeps the input order
    size = m + n
    shards = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i != j:
                shards.append((q, module, m, n, i, j))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_commute_shard, shards))
    return [r for part in parts for r in part]


def _commute_shard(payload) -> list[dict]:
    q, module, m, n, i, j = payload
    odd = (i <= m) != (j <= m)
    out = []
    for t in range(1, (1 if odd else q - 1) + 1):
        for a in range(q):
            for s in range(1, m + n + 1):
                if s not in (i, j):
                    out.append(verify_commutation(q, i, j, t, a, module, m, n, "1", s=s).to_json())
            out.append(verify_commutation(q, i, j, t, a, module, m, n, "2").to_json())
            out.append(verify_commutation(q, i, j, t, a, module, m, n, "3").to_json())
    return out


def cmd_dist(args, cfg: RunConfig):
    action = args.action
    m, n = _mn(cfg)
    try:
        if action == "commute":
            q = _q(args, cfg)
            parse_module(args.module)
            if args.i is not None:
                if args.j is None:
                    raise InputError("--i needs --j")
                recs = _commute_chunk((q, args.module, m, n, args.i, args.j, args.clause,
                                       args.t, args.a, args.target))
            else:
                recs = _commute_all(q, args.module, m, n, cfg.jobs)
            return recs, None
        if action == "idempotent":
            q = _q(args, cfg)
            return idempotent_suite(q, args.module, m, n, literal=not args.closed), None
        if action == "kernel":
            if cfg.field.characteristic == 0 and args.q is None:
                return [char0_annihilation(args.l, cfg.kmax, m, n)], None
            q = _q(args, cfg)
            recs = [
                kernel_annihilation(args.l, q, alpha, cfg.kmax, m, n)
                for alpha in all_alphas(q, m + n)
                if (sum(alpha) - args.l) % q
            ]
            return recs, None
        if action == "witness":
            if args.random:
                return _witness_suite(args, cfg, m, n), None
            u = parse_u(args.u, m, n)
            if cfg.field.characteristic == 0 and args.q is None:
                N = _ints(args.N) if args.N else None
                return [char0_witness(u, args.l, m, n, N=N)], None
            q = _q(args, cfg)
            if args.alpha is None:
                raise InputError("witness needs --alpha in characteristic p")
            return [kernel_witness(u, _ints(args.alpha), q, args.l, m, n, balance=args.balance)], None
    except ArithmeticError as exc:
        return [{"status": "fail", "error": str(exc)}], None
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown dist action {action}")


def _witness_suite(args, cfg: RunConfig, m: int, n: int) -> list[dict]:
    rng = random.Random(cfg.seed)
    recs = []
    char0 = cfg.field.characteristic == 0 and args.q is None
    q = None if char0 else _q(args, cfg)
    for _ in range(args.random):
        u = random_u(rng, m, n, terms=rng.randint(1, 2), with_g=char0)
        try:
            if char0:
                recs.append(char0_witness(u, args.l, m, n))
            else:
                alpha = [rng.randrange(q) for _ in range(m + n)]
                alpha[-1] = (alpha[-1] + args.l - sum(alpha)) % q
                recs.append(kernel_witness(u, alpha, q, args.l, m, n, balance=args.balance))
        except ArithmeticError as exc:
            recs.append({"status": "fail", "error": str(exc)})
    return recs


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--m", type=int, default=None, help="even rank m")
    g.add_argument("--n", type=int, default=None, help="odd rank n")
    g.add_argument("--p", type=int, default=None, help="characteristic (odd prime)")
    g.add_argument("--r", type=int, default=1, help="Frobenius level, q = p^r")
    g.add_argument("--rational", action="store_true", help="work over Q (the default without --p)")
    g.add_argument("--lmax", type=int, default=1, help="largest shift in the admissible decomposition")
    g.add_argument("--kmax", type=int, default=2, help="largest k in V^(l+k) W^k")
    g.add_argument("--jobs", type=int, default=1, help="worker processes")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    g.add_argument("--out", default=None, help="write the report here instead of stdout")
    g.add_argument("--format", default="auto", choices=["auto", "json", "csv", "text"])
    g.add_argument("--timing", action="store_true", help="fill in elapsed_ms (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="superschur", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="command", required=True)

    w = top.add_parser("weights", help="orders, ideals, filtrations on weights")
    ws = w.add_subparsers(dest="action", required=True)
    p = ws.add_parser("leq", parents=[common], help="is mu <= lambda")
    p.add_argument("mu")
    p.add_argument("lam", metavar="lambda")
    p.add_argument("--strong", action="store_true", help="blockwise order instead of dominance")
    p = ws.add_parser("dominant", parents=[common])
    p.add_argument("lam", metavar="lambda")
    p = ws.add_parser("decompose", parents=[common], help="admissible decomposition of an ideal")
    p.add_argument("--gens", nargs="+", required=True)
    p = ws.add_parser("filtration", parents=[common], help="special filtration of the closure of --gens")
    p.add_argument("--gens", nargs="+", required=True)
    p = ws.add_parser("pred", parents=[common], help="congruent dominant predecessor")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--alpha")
    p.add_argument("--q", type=int)
    p.add_argument("--random", type=int, default=0, help="run a seeded suite of N instances")

    b = top.add_parser("bidet", help="bideterminants and factor bases")
    bs = b.add_subparsers(dest="action", required=True)
    for name in ("basis", "rank"):
        p = bs.add_parser(name, parents=[common])
        p.add_argument("--lambda", dest="lam", required=True)
        if name == "basis":
            p.add_argument("--list", action="store_true", help="include the basis elements")
    p = bs.add_parser("straighten", parents=[common])
    p.add_argument("--mu", required=True, help="shape as a weight, e.g. 2,1,0|")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--rows-plus", default="", help="tableau rows separated by '/'")
    p.add_argument("--cols-plus", default="")
    p.add_argument("--rows-minus", default="")
    p.add_argument("--cols-minus", default="")
    p = bs.add_parser("trace-check", parents=[common])
    p.add_argument("--size", type=int, default=3, help="largest block size l")

    d = top.add_parser("dist", help="distribution algebra actions")
    ds = d.add_subparsers(dest="action", required=True)
    p = ds.add_parser("commute", parents=[common])
    p.add_argument("--q", type=int)
    p.add_argument("--module", default="V2W1")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--clause", choices=["1", "2", "3"], default="2")
    p.add_argument("--target", type=int, default=None, help="override the right-hand index")
    p = ds.add_parser("idempotent", parents=[common])
    p.add_argument("--q", type=int)
    p.add_argument("--module", default="V2W1")
    p.add_argument("--closed", action="store_true", help="use the congruence test, not the sums")
    p = ds.add_parser("kernel", parents=[common])
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=int)
    p = ds.add_parser("witness", parents=[common])
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--u", default="1")
    p.add_argument("--alpha")
    p.add_argument("--N", default=None, help="N_1,...,N_{m+n-1} for the characteristic-0 witness")
    p.add_argument("--balance", action="store_true", help="pad z so its weight sum is exactly l")
    p.add_argument("--random", type=int, default=0, help="run a seeded suite of N random u")
    return parser


COMMANDS = {"weights": cmd_weights, "bidet": cmd_bidet, "dist": cmd_dist}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        start = time.perf_counter()
        records, plain = COMMANDS[args.command](args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(records, cfg.fmt, plain)
    if cfg.timing:
        print(f"elapsed_ms: {(time.perf_counter() - start) * 1000:.1f}", file=sys.stderr)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return _status(records)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
