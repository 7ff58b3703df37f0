"""Command-line entry point: ``provlab <subcommand> [flags]``.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal

from . import encodings, goedel, hilbert, klab, syntax
from .gl import ResourceLimit, check_verdict, decide, parse_modal
from .gl.formula import ModalParseError

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    params: dict
    payload: dict
    exit_code: int = EXIT_OK
    text: str = field(default="", repr=False)

    def to_dict(self) -> dict:
        return {"command": self.command, "params": self.params, "result": self.payload,
                "exit_code": self.exit_code}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _verdict_exit(v) -> int:
    return EXIT_OK if v.is_theorem else EXIT_NEGATIVE


def _verdict_text(v, trace: bool) -> str:
    lines = [f"{v.kind}  ({v.mode}, {v.nodes} search nodes)", f"formula: {v.formula}"]
    if v.is_theorem:
        nodes = v.derivation.nodes()
        lines.append(f"derivation: {len(nodes)} distinct sequents, height {v.derivation.height()}")
        if trace:
            ids = {id(d): i for i, d in enumerate(nodes)}
            for i, d in enumerate(nodes):
                prem = ",".join(str(ids[id(p)]) for p in d.premises)
                lines.append(f"  [{i}] {d.rule}{'(' + prem + ')' if prem else ''}: {d.sequent}")
    else:
        m = v.model
        lines.append(f"countermodel: {m.worlds} world(s), root {m.root}")
        for w in range(m.worlds):
            lines.append(f"  world {w}: true atoms {m.true_atoms(w)} -> sees {m.successors(w)}")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def cmd_parse(a) -> CommandResult:
    f = syntax.parse(a.formula)
    text = syntax.to_text(f)
    payload = {"canonical": text, "free_vars": sorted(syntax.free_vars(f)), "repr": repr(f)}
    return CommandResult("parse", {"formula": a.formula}, payload, text=text)


def _code_payload(n: goedel.GoedelNumber) -> dict:
    return {"decimal": str(n), "hex": n.hex, "bytes": len(n.to_bytes())}


def cmd_encode(a) -> CommandResult:
    f = syntax.parse(a.formula)
    n = goedel.encode(f)
    payload = {"formula": syntax.to_text(f), **_code_payload(n)}
    return CommandResult("encode", {"formula": a.formula}, payload,
                         text=f"decimal: {n}\nhex:     {n.hex}")


def cmd_decode(a) -> CommandResult:
    raw = a.code.strip().lower()
    if raw.startswith("0x") and len(raw) > 2 and all(c in "0123456789abcdef" for c in raw[2:]):
        value = int(raw, 16)
    elif raw.isdigit():
        value = int(Decimal(raw))
    else:
        raise UsageError(f"not a decimal or 0x-hex integer: {a.code!r}")
    f = goedel.decode(value)
    text = syntax.to_text(f)
    return CommandResult("decode", {"code": a.code}, {"formula": text}, text=text)


def cmd_diagonalize(a) -> CommandResult:
    template = goedel.build_template(a.days, a.variant)
    d = goedel.diagonalize(template)
    fixed = goedel.sub_meta(d.q, d.q.value) == d.s
    roundtrip = goedel.decode(d.s) == d.sentence
    payload = {
        "q": str(d.q), "q_hex": d.q.hex, "q_bytes": len(d.q.to_bytes()),
        "s": str(d.s), "s_hex": d.s.hex, "s_bytes": len(d.s.to_bytes()),
        "fixed_point": fixed, "decode_roundtrip": roundtrip,
        "template": syntax.to_text(template),
        "sentence": syntax.to_text(d.sentence),
    }
    text = "\n".join([
        f"template Q(x): {payload['template']}",
        f"q = {d.q}",
        f"s = {d.s}",
        f"s = Sub(q, q): {fixed}",
        f"decode(s) = S: {roundtrip}",
    ])
    return CommandResult("diagonalize", {"days": a.days, "variant": a.variant}, payload,
                         EXIT_OK if fixed and roundtrip else EXIT_NEGATIVE, text)


def cmd_prove_gl(a) -> CommandResult:
    f = parse_modal(a.formula)
    v = decide(f, a.mode, a.budget)
    check_verdict(v)
    params = {"formula": a.formula, "mode": a.mode, "budget": a.budget}
    return CommandResult("prove-gl", params, v.to_dict(include_trace=a.trace), _verdict_exit(v),
                         _verdict_text(v, a.trace))


def cmd_paradox(a) -> CommandResult:
    inst = encodings.build_paradox(a.days, a.variant)
    v = encodings.paradox_verdict(inst, a.query, a.mode, a.budget)
    check_verdict(v)
    goal = encodings.paradox_goal(inst, a.query)
    instance = {**inst.header(), "query": a.query, "goal": str(goal), "axiom": str(inst.axiom)}
    payload = {"instance": instance, **v.to_dict(include_trace=a.trace)}
    params = {"days": a.days, "variant": a.variant, "query": a.query, "mode": a.mode}
    text = f"goal: {goal}\nunder the global axiom: {inst.axiom}\n" + _verdict_text(v, a.trace)
    return CommandResult("paradox", params, payload, _verdict_exit(v), text)


def cmd_incompleteness(a) -> CommandResult:
    schema = encodings.build_schema(a.atoms)
    if a.negative_control:
        v = encodings.schema_inconsistency_verdict(schema, a.mode, a.budget)
        label = "negative-control"
    else:
        v = encodings.second_incompleteness_verdict(schema, a.mode, a.budget)
        label = "second-incompleteness"
    check_verdict(v)
    payload = {"instance": {**schema.header(), "query": label}, **v.to_dict(include_trace=a.trace)}
    params = {"atoms": a.atoms, "negative_control": a.negative_control, "mode": a.mode}
    # the negative control succeeds when the schema does NOT force []ff
    code = _verdict_exit(v)
    if a.negative_control:
        code = EXIT_NEGATIVE if v.is_theorem else EXIT_OK
    return CommandResult("incompleteness", params, payload, code, _verdict_text(v, a.trace))


def cmd_census(a) -> CommandResult:
    report = klab.census(a.L, a.ceiling)
    payload = report.to_dict()
    if a.figure:
        from .plots import plot_census

        payload["figure"] = str(plot_census(report, a.figure))
    return CommandResult("census", {"L": a.L}, payload, text=report.table())


def cmd_ktable(a) -> CommandResult:
    reports = klab.sweep(a.max_L, a.ceiling)
    rows = [{"L": r.L, "m": r.m, "upper": r.range_max + 1, "program_count": r.program_count,
             "range_max": r.range_max} for r in reports]
    payload = {"rows": rows}
    if a.figure:
        from .plots import plot_sweep

        payload["figure"] = str(plot_sweep(reports, a.figure))
    header = "L\tm\t2^(L+1)+1\tprograms\t2^(L+1)"
    body = [f"{r['L']}\t{r['m']}\t{r['upper']}\t{r['program_count']}\t{r['range_max']}" for r in rows]
    return CommandResult("ktable", {"max_L": a.max_L}, payload, text="\n".join([header] + body))


def _theory(a) -> hilbert.TheoryConfig:
    axioms = hilbert.load_axioms(a.axioms) if a.axioms else ()
    return hilbert.TheoryConfig(axioms, a.sigma1, a.max_lines, a.max_bytes, a.sigma1_bound)


def cmd_chaitin(a) -> CommandResult:
    t = _theory(a)
    found = hilbert.chaitin_extract(t, a.L, a.budget)
    params = {"L": a.L, "axioms": a.axioms, "budget": a.budget, "sigma1": a.sigma1}
    payload: dict = {"found": found is not None}
    lines = []
    if found is None:
        lines.append(f"no proof of any K(x) > {a.L} within {a.budget} candidates")
    else:
        x, proof = found
        payload.update({"x": x, "proof": proof.to_json_lines(), "proof_bytes": len(proof.serialize())})
        lines += [f"first proof of an incompressibility claim (bound >= {a.L}):", str(proof),
                  f"output x = {x}"]
        k = klab.kolmogorov(x, a.L)
        if k is not None:
            payload["k_of_x"] = k
            lines.append(f"but K({x}) = {k} <= {a.L}: the theory proves a falsehood")
    if a.inconsistency:
        pair = hilbert.inconsistency_scan(t, a.budget)
        payload["contradiction"] = None if pair is None else [p.to_json_lines() for p in pair]
        if pair is None:
            lines.append("no contradictory pair within budget")
        else:
            lines += ["contradictory pair:", str(pair[0]), str(pair[1])]
    code = EXIT_OK if found is not None else EXIT_NEGATIVE
    return CommandResult("chaitin-extract", params, payload, code, "\n".join(lines))


def cmd_enumerate(a) -> CommandResult:
    t = _theory(a)
    proofs = []
    for proof in hilbert.enumerate_proofs(t, a.budget):
        proofs.append(proof)
        if len(proofs) >= a.limit:
            break
    payload = {"count": len(proofs),
               "proofs": [{"bytes": len(p.serialize()), "lines": p.to_json_lines()} for p in proofs]}
    text = "\n\n".join(f"#{k} ({len(p.serialize())} bytes)\n{p}" for k, p in enumerate(proofs))
    params = {"axioms": a.axioms, "budget": a.budget, "limit": a.limit, "sigma1": a.sigma1}
    return CommandResult("enumerate-proofs", params, payload, text=text or "(no proofs)")


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="provlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    def modal_flags(sp):
        sp.add_argument("--mode", choices=["gl", "k4"], default="gl")
        sp.add_argument("--budget", type=int, default=10**7, help="search node budget")
        sp.add_argument("--trace", action="store_true", help="include the derivation")

    sp = add("parse", cmd_parse, "parse and canonically print a formula")
    sp.add_argument("formula")
    sp = add("encode", cmd_encode, "Gödel number of a formula")
    sp.add_argument("formula")
    sp = add("decode", cmd_decode, "formula with a given Gödel number")
    sp.add_argument("code", help="decimal or 0x-prefixed hexadecimal")
    sp = add("diagonalize", cmd_diagonalize, "build the self-referential sentence S = Q(q)")
    sp.add_argument("--days", type=int, default=5)
    sp.add_argument("--variant", choices=["plain", "exclusive"], default="exclusive")
    sp = add("prove-gl", cmd_prove_gl, "decide a modal formula in GL or K4")
    sp.add_argument("--formula", required=True)
    modal_flags(sp)
    sp = add("paradox", cmd_paradox, "surprise-exam verdicts")
    sp.add_argument("--days", type=int, default=2)
    sp.add_argument("--variant", choices=["plain", "exclusive"], default="plain")
    sp.add_argument("--query", choices=[q.value for q in encodings.Query], default="self-refuting")
    modal_flags(sp)
    sp = add("incompleteness", cmd_incompleteness, "modal second-incompleteness schema")
    sp.add_argument("--atoms", type=int, default=2)
    sp.add_argument("--negative-control", action="store_true")
    modal_flags(sp)
    sp = add("census", cmd_census, "K values and m(L) for one L")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--ceiling", type=int, default=klab.DEFAULT_CEILING)
    sp.add_argument("--figure", help="write a PNG of K(x) to this path")
    sp = add("ktable", cmd_ktable, "m(L) and program counts for L = 0..max")
    sp.add_argument("--max-L", dest="max_L", type=int, default=12)
    sp.add_argument("--ceiling", type=int, default=klab.DEFAULT_CEILING)
    sp.add_argument("--figure", help="write a PNG of m(L) against its bounds")

    def theory_flags(sp):
        sp.add_argument("--axioms", help="file with one formula per line")
        sp.add_argument("--budget", type=int, default=10_000, help="candidates to inspect")
        sp.add_argument("--sigma1", action="store_true", help="enable the Sigma_1 witness rule")
        sp.add_argument("--max-lines", type=int, default=3)
        sp.add_argument("--max-bytes", type=int, default=16)
        sp.add_argument("--sigma1-bound", type=int, default=4)

    sp = add("chaitin-extract", cmd_chaitin, "first proof of some K(x) > L and its x")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--inconsistency", action="store_true", help="also scan for F and ~F")
    theory_flags(sp)
    sp = add("enumerate-proofs", cmd_enumerate, "canonical proof stream of a theory")
    sp.add_argument("--limit", type=int, default=20)
    theory_flags(sp)
    return p


def run_cli(argv: list[str] | None = None) -> CommandResult:
    """Parse and dispatch; never exits the interpreter."""
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        a = parser.parse_args(argv)
        if a.command is None:
            raise UsageError(parser.format_help())
        return a.fn(a)
    except UsageError as e:
        return CommandResult("usage", {"argv": argv}, {"error": str(e)}, EXIT_USAGE, str(e))
    except (syntax.ParseError, ModalParseError, goedel.DecodeError, goedel.DiagonalError,
            klab.CeilingExceeded, ValueError, OSError) as e:
        name = argv[0] if argv else "usage"
        return CommandResult(name, {"argv": argv}, {"error": str(e)}, EXIT_USAGE, f"error: {e}")
    except ResourceLimit as e:
        name = argv[0] if argv else "usage"
        return CommandResult(name, {"argv": argv}, {"error": str(e), "diagnostics": e.diagnostics()},
                             EXIT_LIMIT, f"resource limit: {e}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    result = run_cli(argv)
    as_json = "--json" in argv
    out = sys.stdout if result.exit_code in (EXIT_OK, EXIT_NEGATIVE) else sys.stderr
    print(result.to_json() if as_json else result.text, file=out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
