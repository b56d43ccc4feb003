"""Command-line front end.

Every command is deterministic given its flags and ``--seed`` and prints a
reproducible result section; ``--json`` emits a machine-readable run report
instead.  Exit codes: 0 success, 2 input error, 3 precondition violation,
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .configs import Alphabet, parse_config, format_config
from .errors import CapError, InputError, PreconditionError
from . import automata, homotopy, measures, metrics, paths, shifts


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def load_shift(path: str) -> shifts.ShiftPresentation:
    """Accepts both presentation files and SFT spec files."""
    d = _load_json(path)
    try:
        if "forbidden" in d:
            spec = shifts.SftSpec(Alphabet(d["alphabet"]),
                                  tuple(d["forbidden"]))
            return shifts.compile_sft(spec)
        return shifts.ShiftPresentation.from_dict(d)
    except KeyError as e:
        raise InputError(f"{path}: missing field {e}") from e


def load_ca(spec: str) -> automata.CellularAutomaton:
    if spec.startswith("eca:"):
        try:
            return automata.elementary_ca(int(spec[4:]))
        except ValueError as e:
            raise InputError(str(e)) from e
    d = _load_json(spec)
    try:
        return automata.CellularAutomaton.from_dict(d)
    except KeyError as e:
        raise InputError(f"{spec}: missing field {e}") from e


def _frac(x: Fraction) -> str:
    num = f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
        else str(x.numerator)
    return f"{num} ~ {float(x):.12g}"


def _frac_json(x: Fraction):
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


class Report:
    def __init__(self, args, inputs):
        self.started = time.monotonic()
        self.data = {
            "command": " ".join(args),
            "inputs": inputs,
            "result": {},
            "version": __version__,
        }
        self.lines: list[str] = []

    def put(self, key, value, line: str | None = None):
        self.data["result"][key] = value
        if line is not None:
            self.lines.append(line)

    def emit(self, ns) -> None:
        self.data["timing_ms"] = round(
            (time.monotonic() - self.started) * 1000, 3)
        text = "\n".join(self.lines)
        payload = json.dumps(self.data, indent=2, sort_keys=True)
        if ns.out:
            with open(ns.out, "w") as fh:
                fh.write(payload + "\n")
        if ns.json:
            print(payload)
        elif text:
            print(text)


def _alphabet_from(ns, fallback="01") -> Alphabet:
    return Alphabet(ns.alphabet or fallback)


# ---------------------------------------------------------------------------
# subcommands


def cmd_dist(ns, rep: Report) -> None:
    ab = _alphabet_from(ns)
    if ns.to_shift:
        Y = load_shift(ns.to_shift)
        x = parse_config(ns.args[0], Y.alphabet)
        d = metrics.distance_to_shift(x, Y)
        rep.put("distance", _frac_json(d), f"distance to shift: {_frac(d)}")
        return
    x = parse_config(ns.args[0], ab)
    y = parse_config(ns.args[1], ab)
    if ns.estimate:
        d = metrics.density_estimate(x, y, ns.window)
        rep.put("estimate", _frac_json(d),
                f"window density (N={ns.window}): {_frac(d)}")
        return
    kind = "dw" if ns.dw else ("dc" if ns.dc else "db")
    fn = {"db": metrics.d_besicovitch, "dw": metrics.d_weyl,
          "dc": metrics.d_cantor}[kind]
    d = fn(x, y)
    rep.put(kind, _frac_json(d), f"{kind}: {_frac(d)}")


def cmd_classify(ns, rep: Report) -> None:
    if ns.precondition:
        if not ns.shift:
            raise InputError("--precondition requires --shift")
        X = load_shift(ns.shift)
        res = automata.isometric_ca_precondition(
            X, ns.zero, ns.length, ns.period)
        rep.put("passed", res.passed,
                f"precondition: {'pass' if res.passed else 'fail'}")
        if res.failing:
            rep.put("failing", list(res.failing),
                    f"failing pair: {res.failing}")
        return
    if not ns.ca:
        raise InputError("classify needs a CA argument")
    f = load_ca(ns.ca)
    if ns.shift:
        X = load_shift(ns.shift)
        chk = automata.check_on_subshift(f, X, ns.period)
        for prop in ("contracting", "isometric", "expanding"):
            w = getattr(chk, prop)
            rep.put(prop, w is None, chk.verdict(prop))
            if w is not None:
                rep.put(prop + "_witness", {
                    "x": format_config(w.x), "y": format_config(w.y),
                    "d_in": _frac_json(w.d_in),
                    "d_out": _frac_json(w.d_out)})
        return
    c = automata.classify_full_shift(f)
    rep.put("essential_offsets", list(c.neighborhood.essential))
    rep.put("contracting", c.contracting)
    rep.put("isometric", c.isometric)
    rep.put("expanding", c.expanding)
    rep.lines.append(
        f"offsets {list(c.neighborhood.essential)}; "
        f"contracting={c.contracting} isometric={c.isometric} "
        f"expanding={c.expanding}")
    if c.decomposition:
        off, g = c.decomposition
        rep.put("decomposition", {"shift": off, "map": g},
                f"decomposition: shift {off}, map {g}")
    if c.witness:
        x, y, din, dout = c.witness
        rep.put("witness", {
            "x": format_config(x), "y": format_config(y),
            "d_in": _frac_json(din), "d_out": _frac_json(dout)},
            f"witness: {format_config(x)} vs {format_config(y)}: "
            f"{_frac(din)} -> {_frac(dout)}")


def cmd_complex(ns, rep: Report) -> None:
    if ns.mode == "extract":
        X = load_shift(ns.args[0])
        ext = homotopy.extract_complex(X)
        rep.put("complex", ext.complex.to_dict())
        rep.put("poset", [
            {"name": e.name,
             "components": sorted(e.component_set),
             "states": len(e.shift.states)} for e in ext.poset.elements])
        k = ext.complex
        rep.lines.append(
            f"{len(k.vertices)} vertices, "
            f"{len(k.faces_of_size(2))} edges, "
            f"{len(k.faces_of_size(3))} triangles; "
            f"dimension {k.dimension()}")
    elif ns.mode == "embed":
        K = homotopy.AbstractComplex.from_dict(_load_json(ns.args[0]))
        X = load_shift(ns.args[1])
        emb = homotopy.embed_complex(K, X)
        rep.put("marker", emb.marker)
        rep.put("filler", emb.filler)
        rep.put("vertex_words", {str(k): v
                                 for k, v in emb.vertex_words.items()})
        rep.put("faces", [
            {"face": sorted(map(str, face)), "shift": Y.to_dict()}
            for face, Y in sorted(emb.face_shifts.items(),
                                  key=lambda kv: (len(kv[0]),
                                                  sorted(map(str, kv[0]))))])
        rep.lines.append(
            f"marker {emb.marker!r}, filler {emb.filler!r}, "
            f"vertex words {emb.vertex_words}")
    else:  # coords
        X = load_shift(ns.args[0])
        ext = homotopy.extract_complex(X)
        x = parse_config(ns.args[1], X.alphabet)
        pt = homotopy.complex_coordinates(x, ext)
        rep.put("weights", {v: _frac_json(w) for v, w in pt.weights})
        rep.lines.append("barycentric point: " + ", ".join(
            f"{v}: {_frac(w)}" for v, w in pt.weights))


def cmd_path(ns, rep: Report) -> None:
    if ns.mode in ("prefix", "window") and ns.r is None:
        raise InputError(f"path {ns.mode} needs -r RATIONAL")
    r = Fraction(ns.r) if ns.r is not None else None
    n = ns.window
    if ns.mode == "prefix":
        fn = (paths.intersperse_path_prefix if ns.construction == "intersperse"
              else paths.block_path_prefix)
        w = fn(r, n)
        rep.put("word", w, w)
    elif ns.mode == "window":
        fn = (paths.intersperse_path_window if ns.construction == "intersperse"
              else paths.block_path_window)
        w = fn(r, n)
        rep.put("word", w, w)
    elif ns.mode == "embed":
        v = [Fraction(t) for t in ns.args]
        w = paths.embed_point(v, n)
        rep.put("word", w, w)
    else:  # sample
        w = paths.sample_block_path(ns.seed, n)
        rep.put("word", w, w)
        zero = Fraction(w.count("0"), len(w))
        rep.put("zero_density", _frac_json(zero),
                f"zero density {_frac(zero)}")


def cmd_uap(ns, rep: Report) -> None:
    X = load_shift(ns.args[0])
    if ns.mode == "nearest":
        y = parse_config(ns.args[1], X.alphabet)
        ms = metrics.nearest_periodic(X, y, ns.period)
        rep.put("distance", _frac_json(ms.distance))
        rep.put("minimizers", [format_config(z) for z in ms.minimizers])
        rep.lines.append(
            f"distance {_frac(ms.distance)}; minimizers: "
            + ", ".join(format_config(z) for z in ms.minimizers))
    else:
        v = metrics.unique_approximation_search(X, ns.period)
        rep.put("violation", v.violation)
        if v.violation:
            rep.put("witness", format_config(v.witness))
            rep.put("distance", _frac_json(v.distance))
            rep.put("minimizers", [format_config(z) for z in v.minimizers])
        rep.lines.append(str(v))


def cmd_shift(ns, rep: Report) -> None:
    mode = ns.mode
    X = load_shift(ns.args[0])
    if mode == "compile":
        rep.put("presentation", X.to_dict(),
                f"{len(X.states)} states, {len(X.edges)} edges")
    elif mode == "cover":
        C = shifts.shannon_cover(X)
        rep.put("cover", C.to_dict(),
                f"cover: {len(C.states)} states, {len(C.edges)} edges")
    elif mode == "components":
        dec = shifts.transitive_components(X)
        rep.put("components", [c.to_dict() for c in dec.components],
                f"{len(dec.components)} transitive component(s)")
    elif mode == "mixing":
        m = shifts.mixing_distance(X)
        rep.put("mixing_distance", m, f"mixing distance {m}")
    elif mode == "sync-word":
        cap = 16 if ns.length is None else ns.length
        w = shifts.find_unbordered_synchronizing(X, cap=cap)
        rep.put("word", w, f"unbordered synchronizing word: {w!r}")
    elif mode == "entropy":
        pos = shifts.positive_entropy(X)
        rep.put("positive_entropy", pos, f"positive entropy: {pos}")
    elif mode == "inside":
        res = shifts.mixing_sft_inside(X)
        rep.put("w", res.w)
        rep.put("u", res.u)
        rep.put("v", res.v)
        rep.put("shift", res.shift.to_dict())
        rep.lines.append(f"w={res.w!r} u={res.u!r} v={res.v!r}")
    elif mode == "language":
        words = shifts.language(X, 3 if ns.length is None else ns.length)
        rep.put("words", words, " ".join(words))
    else:  # contains
        x = parse_config(ns.args[1], X.alphabet)
        res = shifts.contains_config(X, x)
        rep.put("contains", res, str(res))


def cmd_measure(ns, rep: Report) -> None:
    mode = ns.mode
    if mode in ("parry", "cylinder", "decay"):
        X = load_shift(ns.args[0])
        mu = measures.parry_measure(X)
        if mode == "parry":
            rep.put("measure", mu.report(),
                    f"eigenvalue {mu.eigenvalue:.12g}; residuals "
                    f"{mu.report()['stationarity_residual']:.2e}")
        elif mode == "cylinder":
            w = ns.args[1]
            p = measures.cylinder(mu, w)
            rep.put("cylinder", p, f"mu([{w}]) = {p:.12g}")
        else:
            cert = measures.cylinder_decay_bound(
                mu, 12 if ns.length is None else ns.length)
            rep.put("gamma", _frac_json(cert.gamma))
            rep.put("t", cert.t)
            rep.put("verified_length", cert.verified_length)
            rep.lines.append(
                f"gamma ~ {float(cert.gamma):.6g}, t = {cert.t}, "
                f"verified to length {cert.verified_length}")
    elif mode == "binom-bound":
        n, m, p = (int(t) for t in ns.args)
        ok = measures.verify_binomial_bound(n, m, p)
        rep.put("holds", ok, f"bound holds: {ok}")
    elif mode == "growth-threshold":
        k, a = Fraction(ns.args[0]), Fraction(ns.args[1])
        m, n0 = measures.binomial_growth_threshold(k, a)
        rep.put("m", m)
        rep.put("n0", n0)
        rep.lines.append(f"m = {m}, verified from n0 = {n0}")
    elif mode == "generic":
        ab = _alphabet_from(ns)
        w = measures.bernoulli_prefix(
            ab, ns.seed, 64 if ns.length is None else ns.length)
        rep.put("word", w, w)
    else:  # ball-count
        w = ns.args[0]
        n = int(ns.args[1])
        eps = Fraction(ns.args[2])
        count, bound, ok = measures.hamming_ball_count(w, n, eps)
        rep.put("count", count)
        rep.put("bound", bound)
        rep.put("ok", ok)
        rep.lines.append(f"count {count} <= bound {bound}: {ok}")


# ---------------------------------------------------------------------------


def _common_flags() -> argparse.ArgumentParser:
    # shared flags, usable before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="emit a JSON run report")
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS,
                        help="also write the report to a file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--alphabet", default=argparse.SUPPRESS,
                        help="alphabet for configuration literals")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    ap = argparse.ArgumentParser(
        prog="shiftgeo",
        description="exact geometry of shift spaces in the density "
                    "pseudometrics",
        parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[common], **kw))

    p = sub.add_parser("dist", help="distances between configurations")
    p.add_argument("--db", action="store_true")
    p.add_argument("--dw", action="store_true")
    p.add_argument("--dc", action="store_true")
    p.add_argument("--estimate", action="store_true",
                   help="finite centered-window estimate over --window N")
    p.add_argument("--window", type=int, default=1000, metavar="N")
    p.add_argument("--to-shift", metavar="FILE")
    p.add_argument("args", nargs="+")

    p = sub.add_parser("classify", help="cellular automaton geometry")
    p.add_argument("ca", nargs="?")
    p.add_argument("--shift", metavar="FILE")
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--precondition", action="store_true")
    p.add_argument("--zero", default="0")
    p.add_argument("--length", type=int, default=4)

    p = sub.add_parser("complex", help="simplicial complex translations")
    p.add_argument("mode", choices=["extract", "embed", "coords"])
    p.add_argument("args", nargs="+")

    p = sub.add_parser("path", help="path constructions and sampling")
    p.add_argument("mode", choices=["prefix", "window", "embed", "sample"])
    p.add_argument("--construction", choices=["intersperse", "block"],
                   default="block")
    p.add_argument("-r", help="rational parameter in [0, 1]")
    p.add_argument("--window", type=int, default=32, metavar="N")
    p.add_argument("args", nargs="*")

    p = sub.add_parser("uap", help="nearest periodic points and the unique "
                                   "approximation property")
    p.add_argument("mode", choices=["nearest", "search"])
    p.add_argument("--period", type=int, default=8)
    p.add_argument("args", nargs="+")

    p = sub.add_parser("shift", help="sofic shift machinery")
    p.add_argument("mode", choices=["compile", "cover", "components",
                                    "mixing", "sync-word", "entropy",
                                    "inside", "language", "contains"])
    p.add_argument("--length", type=int)
    p.add_argument("args", nargs="+")

    p = sub.add_parser("measure", help="Markov measures and exact bounds")
    p.add_argument("mode", choices=["parry", "cylinder", "decay",
                                    "binom-bound", "growth-threshold",
                                    "generic", "ball-count"])
    p.add_argument("--length", type=int)
    p.add_argument("args", nargs="*")
    return ap


_HANDLERS = {
    "dist": cmd_dist,
    "classify": cmd_classify,
    "complex": cmd_complex,
    "path": cmd_path,
    "uap": cmd_uap,
    "shift": cmd_shift,
    "measure": cmd_measure,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    for attr, default in (("json", False), ("out", None), ("seed", 0),
                          ("alphabet", None)):
        if not hasattr(ns, attr):
            setattr(ns, attr, default)
    inputs = {}
    for a in argv:
        try:
            inputs[a] = _digest(a)
        except OSError:
            pass
    rep = Report(["shiftgeo"] + argv, inputs)
    try:
        _HANDLERS[ns.cmd](ns, rep)
    except CapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return 4
    except PreconditionError as e:
        print(f"precondition violation: {e}", file=sys.stderr)
        return 3
    except (InputError, ValueError, IndexError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    rep.emit(ns)
    return 0


if __name__ == "__main__":
    sys.exit(main())
