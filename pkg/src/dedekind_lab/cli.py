"""Command-line front end.

Exit codes: 0 success, 1 domain error (reported by error class name),
2 usage error (reported with the offending flag).

Every subcommand writes a table. CSV has a header row, LF line endings and
rationals as ``num/den``. JSON is one object with ``command``, ``config``
and ``results``. ``dedekind``, ``phi`` and ``symbol`` print the bare value
when no ``--format`` is given.

Options may also come from ``--config FILE`` holding ``key=value`` lines
(``#`` starts a comment); explicit flags win over the file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import cosets, dedekind, equidist, kloosterman
from ._parallel import ENV_THREADS, default_threads, running_complex_sum
from .errors import DedekindLabError
from .groups import GroupSpec, UnimodularMatrix

# keys never echoed into JSON, so they cannot change output bytes
_EXECUTION_KEYS = {"threads", "out", "format", "config"}


class UsageError(Exception):
    pass


# -- argument types ---------------------------------------------------------------

def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonzero_int(text: str) -> int:
    v = int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a nonzero integer")
    return v


def _cutoff(text: str) -> float:
    v = float(text)
    if not math.isfinite(v) or v < 1:
        raise argparse.ArgumentTypeError(f"expected a real >= 1, got {text}")
    return v


def _weight(text: str):
    try:
        k = dedekind.as_weight(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse weight {text!r}") from None
    if k <= 0:
        raise argparse.ArgumentTypeError(f"weight must be positive, got {text}")
    return k


def _group(text: str) -> GroupSpec:
    try:
        return GroupSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _real_above_half(text: str) -> float:
    v = float(text)
    if not v > 0.5:
        raise argparse.ArgumentTypeError(f"need s > 1/2, got {text}")
    return v


# -- formatting -------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, GroupSpec):
        return str(v)
    return v


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _jfmt(v):
    # numbers stay JSON numbers; rationals and groups travel as strings
    return v if isinstance(v, (int, float)) else str(_fmt(v))


def _json(command, config, columns, rows) -> str:
    doc = {
        "command": command,
        "config": {k: _jfmt(v) for k, v in sorted(config.items()) if k not in _EXECUTION_KEYS},
        "results": [{c: _jfmt(row[c]) for c in columns} for row in rows],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


# -- subcommands ------------------------------------------------------------------
# Each returns (columns, rows); rows are dicts keyed by column.

def cmd_dedekind(o):
    f = dedekind.dedekind_sum_naive if o["method"] == "naive" else dedekind.dedekind_sum_fast
    return ["a", "c", "value"], [{"a": o["a"], "c": o["c"], "value": f(o["a"], o["c"])}]


def _matrix(o) -> UnimodularMatrix:
    if o.get("word"):
        return dedekind.word_matrix(o["word"])
    entries = [o.get(k) for k in "abcd"]
    if all(e is not None for e in entries):
        try:
            return UnimodularMatrix(*entries)
        except ValueError as exc:
            raise UsageError(f"--a --b --c --d: {exc}") from None
    if any(e is not None for e in entries):
        raise UsageError("--a --b --c --d must be given together")
    return dedekind.random_group_word(o["length"], o["seed"])


def cmd_phi(o):
    g = _matrix(o)
    row = dict(zip("abcd", g.entries()))
    row.update(phi=dedekind.phi_cocycle(g), psi=dedekind.psi_cocycle(g))
    return ["a", "b", "c", "d", "phi", "psi"], [row]


def cmd_symbol(o):
    coset = cosets.DoubleCoset(o["c"], o["a"] % o["c"], o["group"])
    return ["a", "c", "value"], [{"a": coset.a, "c": coset.c, "value": dedekind.dedekind_symbol(coset)}]


def cmd_cosets(o):
    rows = []
    for dc in cosets.enumerate_cosets(o["group"], o["x"]):
        g = cosets.complete_matrix(dc)
        rows.append({"c": g.c, "a": g.a, "b": g.b, "d": g.d})
    return ["c", "a", "b", "d"], rows


def cmd_count(o):
    r = cosets.pi_count(o["group"], o["x"])
    return ["x", "count", "main_term", "ratio", "remainder"], [vars(r)]


def cmd_zeta(o):
    v = cosets.zeta_partial(o["group"], o["s"], o["x"])
    return ["s", "x", "value"], [{"s": o["s"], "x": o["x"], "value": v}]


def cmd_kloosterman(o):
    vals = kloosterman.kloosterman_values(o["m"], o["n"], o["cmax"], o["threads"])
    if o["weighting"] == "over_c":
        weighted = [kv.value / kv.c for kv in vals]
    else:
        weighted = [kv.value for kv in vals]
    partial = running_complex_sum(weighted)
    rows = [
        {"c": kv.c, "re": kv.value.real, "im": kv.value.imag, "terms": kv.term_count,
         "partial_re": p.real, "partial_im": p.imag}
        for kv, p in zip(vals, partial)
    ]
    return ["c", "re", "im", "terms", "partial_re", "partial_im"], rows


def cmd_twisted(o):
    rows = []
    for c in range(1, o["cmax"] + 1):
        v = kloosterman.kloosterman_twisted(o["k"], c, o["group"])
        rows.append({"c": c, "re": v.real, "im": v.imag})
    return ["c", "re", "im"], rows


def cmd_vardi(o):
    rows = [{"c": c, "residual": r} for c, r in kloosterman.vardi_scan(o["k"], o["cmax"], o["threads"])]
    return ["c", "residual"], rows


def _stream(o):
    return equidist.sample_stream(o["k"], o["group"], o["x"])


def cmd_weyl(o):
    stream = _stream(o)
    ms = range(1, o["M"] + 1) if o.get("M") else [o["m"]]
    rows = []
    for m in ms:
        r = equidist.weyl_sum(stream, m)
        rows.append({"m": m, "re": r.weyl_sum.real, "im": r.weyl_sum.imag, "normalized": r.normalized})
    return ["m", "re", "im", "normalized"], rows


def cmd_discrepancy(o):
    stream = _stream(o)
    r = equidist.erdos_turan_bound(stream, o["M"])
    row = {"x": o["x"], "n": len(stream), "star_discrepancy": r.star_discrepancy,
           "et_bound": r.et_bound, "M": r.M}
    return ["x", "n", "star_discrepancy", "et_bound", "M"], [row]


def cmd_histogram(o):
    counts = equidist.histogram(_stream(o), o["bins"])
    b = o["bins"]
    rows = [{"bin": j, "lo": Fraction(j, b), "hi": Fraction(j + 1, b), "count": int(n)}
            for j, n in enumerate(counts)]
    return ["bin", "lo", "hi", "count"], rows


# name -> (handler, help, options, defaults, prints bare value without --format)
_G = ("--group", dict(type=_group, help="sl2z or gamma0:N"))
_X = ("--x", dict(type=_cutoff, help="inclusive cutoff on c"))
_K = ("--k", dict(type=_weight, help="weight: decimal (double path) or p/q (exact path)"))
_CMAX = ("--cmax", dict(type=_positive_int))

COMMANDS = {
    "dedekind": (cmd_dedekind, "Dedekind sum s(a;c)",
                 [("--a", dict(type=int)), ("--c", dict(type=_positive_int)),
                  ("--method", dict(choices=["fast", "naive"]))],
                 {"method": "fast"}, True),
    "phi": (cmd_phi, "Phi and psi of a matrix, a word, or a random word",
            [("--a", dict(type=int)), ("--b", dict(type=int)), ("--c", dict(type=int)),
             ("--d", dict(type=int)), ("--word", dict(help="letters S s T t (lower case = inverse)")),
             ("--length", dict(type=_positive_int)), ("--seed", dict(type=int))],
            {"length": 10, "seed": 0}, True),
    "symbol": (cmd_symbol, "Dedekind symbol of the coset (a, c)",
               [("--a", dict(type=int)), ("--c", dict(type=_positive_int)), _G],
               {"group": GroupSpec.sl2z()}, True),
    "cosets": (cmd_cosets, "enumerate double cosets with c <= x", [_G, _X],
               {"group": GroupSpec.sl2z(), "x": 10.0}, False),
    "count": (cmd_count, "double coset count pi(x)", [_G, _X],
              {"group": GroupSpec.sl2z(), "x": 10.0}, False),
    "zeta": (cmd_zeta, "partial sums of Z(s)", [_G, ("--s", dict(type=_real_above_half)), _X],
             {"group": GroupSpec.sl2z(), "s": 2.0, "x": 1000.0}, False),
    "kloosterman": (cmd_kloosterman, "classical S(m,n;c) for c <= cmax",
                    [("--m", dict(type=int)), ("--n", dict(type=int)), _CMAX,
                     ("--weighting", dict(choices=["unweighted", "over_c"]))],
                    {"m": 1, "n": 1, "cmax": 100, "weighting": "unweighted"}, False),
    "twisted": (cmd_twisted, "chi_k-twisted Kloosterman sums", [_K, _CMAX, _G],
                {"k": Fraction(12), "cmax": 50, "group": GroupSpec.sl2z()}, False),
    "vardi": (cmd_vardi, "Vardi identity residuals", [_K, _CMAX],
              {"k": Fraction(12), "cmax": 200}, False),
    "weyl": (cmd_weyl, "Weyl sums of {k s}", [_K, _G, _X, ("--m", dict(type=_nonzero_int)),
                                               ("--M", dict(type=_positive_int, help="emit m = 1..M"))],
             {"k": Fraction(12), "group": GroupSpec.sl2z(), "x": 100.0, "m": 1}, False),
    "discrepancy": (cmd_discrepancy, "star discrepancy and Erdos-Turan bound",
                    [_K, _G, _X, ("--M", dict(type=_positive_int))],
                    {"k": Fraction(12), "group": GroupSpec.sl2z(), "x": 100.0, "M": 20}, False),
    "histogram": (cmd_histogram, "histogram of {k s}", [_K, _G, _X, ("--bins", dict(type=_positive_int))],
                  {"k": Fraction(12), "group": GroupSpec.sl2z(), "x": 100.0, "bins": 20}, False),
}

_REQUIRED = {"dedekind": ("a", "c"), "symbol": ("a", "c")}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dedekind-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_, opts, _, _) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        for flag, kw in opts:
            sp.add_argument(flag, default=None, **kw)
        sp.add_argument("--format", choices=["csv", "json"], default=None)
        sp.add_argument("--out", default=None, help="write here instead of stdout")
        sp.add_argument("--threads", type=_positive_int, default=None,
                        help=f"worker cap (default ${ENV_THREADS} or 1)")
        sp.add_argument("--config", default=None, help="key=value file; flags win")
    return p


def _read_config(path: str, subparser: argparse.ArgumentParser) -> dict:
    actions = {a.dest: a for a in subparser._actions if a.dest not in ("help", "config")}
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config {path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in actions:
            raise UsageError(f"--config {path}:{lineno}: unknown key {key!r}")
        act = actions[key]
        try:
            val = act.type(value) if act.type else value
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"--config {path}:{lineno}: {key}: {exc}") from None
        if act.choices is not None and val not in act.choices:
            raise UsageError(f"--config {path}:{lineno}: {key} must be one of {list(act.choices)}")
        out[key] = val
    return out


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for act in parser._actions:
        if isinstance(act, argparse._SubParsersAction):
            return act.choices[name]
    raise KeyError(name)  # pragma: no cover


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        name = ns.command
        handler, _, _, defaults, bare = COMMANDS[name]
        opts = dict(defaults)
        opts.update({"threads": default_threads(), "format": None, "out": None})
        if ns.config:
            opts.update(_read_config(ns.config, _subparser(parser, name)))
        opts.update({k: v for k, v in vars(ns).items() if v is not None and k != "command"})
        for key in _REQUIRED.get(name, ()):
            if opts.get(key) is None:
                raise UsageError(f"{name}: --{key} is required")
        columns, rows = handler(opts)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except DedekindLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1

    fmt = opts["format"]
    if fmt is None and bare:
        text = "\n".join(str(_fmt(r["value" if "value" in r else "phi"])) for r in rows) + "\n"
    elif fmt == "json":
        text = _json(name, {k: v for k, v in opts.items() if v is not None}, columns, rows)
    else:
        text = _csv(columns, rows)

    if opts["out"]:
        try:
            with open(opts["out"], "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: OSError: {exc}", file=stderr)
            return 1
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
