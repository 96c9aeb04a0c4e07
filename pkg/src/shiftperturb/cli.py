"""Command line front end.

Jobs are JSON files naming one system (full | sft | sofic | sgap | dgap)
plus command-specific fields; flags override job defaults. Text output is an
aligned table; --json emits a versioned machine-readable record. Exit codes:
0 success, 1 parse errors, 2 unsupported inputs, 3 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .automata import (DirectedGraph, LabeledGraph, full_shift_graph,
                       lang_dfa, perron_root)
from .conjugacy import swap_admissible, verify_conjugacy
from .escape import Point, escape_rate, lambda_sequence, local_rate
from .perturb import (OracleMismatchError, UnsupportedWordError, _as_presentation,
                      _jsonable, _lang_perron, check_structure, decay_profile,
                      dgap_perturb_entropy, sft_multi_gf, sgap_perturb_gf,
                      sofic_perturb)
from .spaces import GapSet, sgap_entropy_base

SCHEMA_VERSION = "1"

COMMANDS = ("entropy", "series", "decay", "conjugacy", "structure",
            "escape", "present")


class JobError(Exception):
    """Malformed command line or job file; exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise JobError(message)


def _parse_args(argv):
    p = _Parser(prog="shiftperturb", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("jobspec", help="path to a JSON job file")
    p.add_argument("mode", nargs="?", default=None,
                   help="escape mode: rate | local | sequence")
    p.add_argument("--json", dest="as_json", action="store_true",
                   help="emit a machine-readable record")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    args = p.parse_args(argv)
    if args.mode is not None and args.command != "escape":
        raise JobError(f"positional mode is only valid for escape, got {args.mode!r}")
    return args


def _load_job(path):
    try:
        with open(path) as fh:
            job = json.load(fh)
    except OSError as e:
        raise JobError(f"cannot read job file: {e}")
    except json.JSONDecodeError as e:
        raise JobError(f"job file is not valid JSON: {e}")
    if not isinstance(job, dict):
        raise JobError("job file must contain a JSON object")
    return job


def _field(job, key, kinds, required=True, default=None):
    if key not in job:
        if required:
            raise JobError(f"job is missing required field {key!r}")
        return default
    val = job[key]
    if kinds is not None and not isinstance(val, kinds):
        raise JobError(f"field {key!r} has unexpected type {type(val).__name__}")
    return val


def _gapset_from(spec):
    if isinstance(spec, str):
        if spec == "naturals":
            return GapSet.naturals()
        if spec == "positives":
            return GapSet.positives()
        raise JobError(f"unknown gap set name {spec!r}")
    if isinstance(spec, list):
        return GapSet(members=spec)
    if isinstance(spec, dict):
        if "multiples" in spec:
            return GapSet.multiples(int(spec["multiples"]))
        if "members" in spec:
            return GapSet(members=spec["members"])
        if "pre" in spec and "per" in spec:
            return GapSet(pre=spec["pre"], per=spec["per"])
    raise JobError("gap set must be a name, a member list, {members}, "
                   "{multiples}, or {pre, per}")


def _system_from(job):
    """Returns (kind, object) where object is what the engines accept."""
    spec = _field(job, "system", dict)
    kind = spec.get("kind")
    if kind == "full":
        n = spec.get("N")
        if not isinstance(n, int) or n < 1:
            raise JobError("full shift needs an integer N >= 1")
        return "full", n
    if kind == "sft":
        adj = spec.get("adjacency")
        if not isinstance(adj, list) or not adj:
            raise JobError("sft needs a square adjacency matrix")
        try:
            return "sft", DirectedGraph(adj)
        except (ValueError, TypeError) as e:
            raise JobError(f"bad adjacency matrix: {e}")
    if kind == "sofic":
        nv = spec.get("vertices")
        edges = spec.get("edges")
        if not isinstance(nv, int) or not isinstance(edges, list):
            raise JobError("sofic needs vertices (int) and edges (list)")
        try:
            return "sofic", LabeledGraph(
                nv, [(int(s), int(t), str(l)) for s, t, l in edges])
        except (ValueError, TypeError) as e:
            raise JobError(f"bad labeled graph: {e}")
    if kind == "sgap":
        if "gaps" not in spec:
            raise JobError("sgap needs a gaps field")
        return "sgap", _gapset_from(spec["gaps"])
    if kind == "dgap":
        d = spec.get("d")
        if not isinstance(d, int) or d < 1:
            raise JobError("dgap needs an integer d >= 1")
        return "dgap", d
    raise JobError("system.kind must be one of full, sft, sofic, sgap, dgap")


def _words_from(job, *, many=False):
    if "words" in job:
        words = _field(job, "words", list)
        if not many and len(words) != 1:
            raise JobError("this command takes a single word")
        return [str(w) for w in words]
    w = _field(job, "word", (str, list))
    return [w if isinstance(w, str) else "".join(map(str, w))]


def _edge_words(g: DirectedGraph, words):
    out = []
    for w in words:
        if isinstance(w, str) or not isinstance(w, list):
            raise JobError("sft words must be lists of [src, dst, copy] edges")
        try:
            out.append([(int(s), int(t), int(c)) for s, t, c in w])
        except (ValueError, TypeError):
            raise JobError("sft words must be lists of [src, dst, copy] edges")
    return out


def _points_from(job):
    pts = _field(job, "points", list)
    out = []
    for p in pts:
        if not isinstance(p, dict) or "per" not in p:
            raise JobError("each point needs pre and per strings")
        out.append(Point(str(p.get("pre", "")), str(p["per"])))
    return out


def _perturb_record(kind, system, job, tol, nmax):
    n_check = max(6, nmax)
    words = None
    if kind == "sgap":
        words = _words_from(job)
        res = sgap_perturb_gf(system, words[0], tol=tol, n_check=n_check)
        ambient = math.log(sgap_entropy_base(system))
    elif kind == "dgap":
        words = _words_from(job)
        res = dgap_perturb_entropy(system, words[0], tol=tol, n_check=n_check)
        ambient = math.log(sgap_entropy_base(GapSet.multiples(system)))
    elif kind == "sft":
        raw = _field(job, "words", list, required=False)
        if raw is None:
            raw = [_field(job, "word", list)]
        res = sft_multi_gf(system, _edge_words(system, raw), tol=tol,
                           n_check=n_check)
        words = [str(w) for w in raw]
        ambient = math.log(perron_root(system))
    else:
        g = full_shift_graph(system) if kind == "full" else system
        words = _words_from(job, many=True)
        if len(words) == 1:
            res, _ = sofic_perturb(g, words[0], tol=tol, n_check=n_check)
        else:
            if kind != "full":
                raise UnsupportedWordError(
                    "multi-word perturbation needs a full shift or an sft")
            walks = [[(0, 0, int(ch)) for ch in w] for w in words]
            res = sft_multi_gf(DirectedGraph([[system]]), walks, tol=tol,
                               n_check=n_check)
        ambient = math.log(_lang_perron(lang_dfa(g, [])))
    return res, ambient, words


def _cmd_entropy(args, job, kind, system, tol, nmax, horizon):
    res, ambient, words = _perturb_record(kind, system, job, tol, nmax)
    d = res.as_dict()
    return {
        "command": "entropy",
        "words": words,
        "ambient_entropy": ambient,
        "entropy": d["entropy"],
        "lambda": d["lambda"],
        "empty": res.lam == 0,
        "oracle_checked": True,
        "diagnostics": d["diagnostics"],
    }


def _cmd_series(args, job, kind, system, tol, nmax, horizon):
    res, ambient, words = _perturb_record(kind, system, job, tol, nmax)
    d = res.as_dict()
    rows = [{"n": n, "count": c} for n, c in enumerate(res.series[:nmax + 1])]
    return {
        "command": "series",
        "words": words,
        "generating_function": d["generating_function"],
        "normalization_shift": res.diagnostics.get("normalization_power"),
        "rows": rows,
        "lambda": d["lambda"],
    }


def _cmd_decay(args, job, kind, system, tol, nmax, horizon):
    family = _field(job, "family", list)
    family = [str(w) for w in family]
    target = system if kind != "full" else full_shift_graph(system)
    if kind == "dgap":
        target = GapSet.multiples(system)
    prof = decay_profile(target, family, tol=tol)
    return {"command": "decay", **prof}


def _cmd_conjugacy(args, job, kind, system, tol, nmax, horizon):
    u = str(_field(job, "u", str))
    w = str(_field(job, "w", str))
    g = _as_presentation(full_shift_graph(system) if kind == "full" else system)
    adm = swap_admissible(g, u, w) if u != w else {"admissible": True,
                                                  "reasons": [],
                                                  "identical": True}
    record = {"command": "conjugacy", "u": u, "w": w, "admissible": adm}
    if adm["admissible"]:
        rep = verify_conjugacy(g, u, w, n_max=nmax, tol=tol)
        record["report"] = {k: v for k, v in rep.items() if k != "admissible"}
        record["ok"] = rep["ok"]
    else:
        record["ok"] = False
    return record


def _cmd_structure(args, job, kind, system, tol, nmax, horizon):
    forbidden = _words_from(job, many=True) if ("word" in job or "words" in job) else []
    sync = _field(job, "sync_words", list, required=False, default=[])
    target = full_shift_graph(system) if kind == "full" else system
    if kind == "dgap":
        target = GapSet.multiples(system)
    rep = check_structure(target, forbidden, horizon=horizon,
                          sync_words=[str(m) for m in sync])
    return {"command": "structure", "forbidden": forbidden, **rep}


def _cmd_escape(args, job, kind, system, tol, nmax, horizon):
    if kind != "full":
        raise UnsupportedWordError("escape rates are defined on full shifts")
    mode = args.mode or job.get("mode")
    if mode is None:
        if "points" in job:
            mode = "sequence" if "n_range" in job else "local"
        else:
            mode = "rate"
    if mode == "rate":
        words = _words_from(job, many=True) if ("word" in job or "words" in job) else []
        rho = escape_rate(system, words, tol=tol, n_check=max(6, nmax))
        return {"command": "escape", "mode": "rate", "N": system,
                "words": words,
                "rho": "inf" if math.isinf(rho) else rho}
    if mode == "local":
        pts = _points_from(job)
        rec = local_rate(system, pts)
        rec["points"] = [{"pre": p.pre, "per": p.per} for p in pts]
        out = {"command": "escape", "mode": "local", **rec}
        for key in ("T", "lambda", "rho"):
            if rec[key] is not None:
                out[key + "_float"] = float(rec[key])
        return out
    if mode == "sequence":
        pts = _points_from(job)
        rng = job.get("n_range", [2, 14])
        if (not isinstance(rng, list)) or len(rng) != 2:
            raise JobError("n_range must be [lo, hi]")
        rec = lambda_sequence(system, pts, n_lo=int(rng[0]), n_hi=int(rng[1]))
        rec["points"] = [{"pre": p.pre, "per": p.per} for p in pts]
        return {"command": "escape", "mode": "sequence", **rec}
    raise JobError(f"unknown escape mode {mode!r}")


def _cmd_present(args, job, kind, system, tol, nmax, horizon):
    if kind in ("sft", "dgap"):
        raise UnsupportedWordError("present needs a labeled system "
                                   "(full, sofic, or sgap)")
    g = full_shift_graph(system) if kind == "full" else _as_presentation(system)
    word = _words_from(job)[0]
    res, pres = sofic_perturb(g, word, tol=tol, n_check=max(6, nmax))
    return {
        "command": "present",
        "word": word,
        "lambda": res.as_dict()["lambda"],
        "vertices": pres.n,
        "edges": sorted([s, t, l] for (s, t, l) in pres.edges),
    }


_DISPATCH = {
    "entropy": _cmd_entropy,
    "series": _cmd_series,
    "decay": _cmd_decay,
    "conjugacy": _cmd_conjugacy,
    "structure": _cmd_structure,
    "escape": _cmd_escape,
    "present": _cmd_present,
}


def _fmt_cell(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_cell(x) for x in v)
    return str(v)


def _render_table(rows, out):
    cols = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    widths = {c: len(c) for c in cols}
    grid = []
    for r in rows:
        line = [_fmt_cell(r.get(c, "")) for c in cols]
        grid.append(line)
        for c, cell in zip(cols, line):
            widths[c] = max(widths[c], len(cell))
    out.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
    for line in grid:
        out.write("  ".join(cell.ljust(widths[c])
                            for c, cell in zip(cols, line)).rstrip() + "\n")


def _render_text(record, out):
    rows = None
    for key, val in record.items():
        if key == "rows" and isinstance(val, list):
            rows = val
            continue
        if isinstance(val, (dict, list)):
            out.write(f"{key}: {json.dumps(_jsonable(val), sort_keys=True)}\n")
        else:
            out.write(f"{key}: {_fmt_cell(val)}\n")
    if rows is not None:
        out.write("\n")
        dict_rows = [r if isinstance(r, dict) else {"value": r} for r in rows]
        if dict_rows:
            _render_table(dict_rows, out)


def main(argv=None):
    try:
        args = _parse_args(argv if argv is not None else sys.argv[1:])
        job = _load_job(args.jobspec)
        kind, system = _system_from(job)
        tol = args.tol if args.tol is not None else float(job.get("tol", 1e-9))
        nmax = args.nmax if args.nmax is not None else int(job.get("n_max", 12))
        horizon = (args.horizon if args.horizon is not None
                   else int(job.get("horizon", 30)))
        record = _DISPATCH[args.command](args, job, kind, system, tol, nmax,
                                         horizon)
    except JobError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except UnsupportedWordError as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return 2
    except OracleMismatchError as e:
        print(f"oracle disagreement: {e}", file=sys.stderr)
        return 3
    except ArithmeticError as e:
        print(f"oracle disagreement: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return 2
    record["schema_version"] = SCHEMA_VERSION
    if args.as_json:
        print(json.dumps(_jsonable(record), sort_keys=True, indent=2))
    else:
        _render_text(record, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
