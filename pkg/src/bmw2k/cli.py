"""Command-line front end: ``bmw2k <command> [parameter source] [options]``.

Reports go to stdout as JSON, a short human-readable summary goes to
stderr.  Exit status: 0 success, 1 a requested check failed, 2 usage error,
3 bad parameter file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    hecke_quotient_check,
    ideal_check,
    multiply,
    one_element,
    phi_mismatches,
    reduce_word,
    structure_constant_records,
)
from .coeff import CoeffError
from .params import (
    ParamError,
    ParamSet,
    admissibility_report,
    generic_admissible,
    load_params,
    random_admissible_finite_field,
)
from .repv import build_v, verify_v
from .repxi import build_xi, three_by_three_check, verify_xi, xi_matrices_dict
from .words import WordError

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PARAMS = 0, 1, 2, 3

class UsageError(Exception):
    pass


class ParamFileError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params_path: str | None = None
    generic: bool = False
    k: int | None = None
    sign: str = "plus"
    fp: int | None = None
    seed: int = 0
    words: list[str] = field(default_factory=list)
    output: str | None = None
    fmt: str = "json"
    residuals: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        cfg = cls(
            command=ns.command,
            params_path=ns.params,
            generic=ns.generic,
            k=ns.k,
            sign=ns.sign,
            fp=ns.fp,
            seed=ns.seed,
            words=list(getattr(ns, "word", None) or []) + list(getattr(ns, "operands", None) or []),
            output=ns.output,
            fmt=ns.format,
            residuals=getattr(ns, "residuals", False),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.command == "generic-params" and self.params_path is None and self.fp is None:
            self.generic = True
        sources = sum([self.params_path is not None, self.generic, self.fp is not None])
        if sources != 1:
            raise UsageError("give exactly one parameter source: --params FILE, --generic or --fp P")
        if self.params_path is None and (self.k is None or self.k < 1):
            raise UsageError("--k must be a positive integer for --generic / --fp")
        if self.command == "reduce" and len(self.words) != 1:
            raise UsageError("reduce needs exactly one --word")
        if self.command == "multiply" and len(self.words) < 2:
            raise UsageError("multiply needs at least two operands")

    def load(self) -> ParamSet:
        if self.params_path is not None:
            try:
                return load_params(self.params_path)
            except (OSError, ValueError, TypeError, ParamError, CoeffError) as exc:
                raise ParamFileError(f"{self.params_path}: {exc}") from exc
        try:
            if self.generic:
                return generic_admissible(self.k, self.sign)
            return random_admissible_finite_field(self.k, self.fp, self.seed, self.sign)
        except (ParamError, CoeffError) as exc:
            raise ParamFileError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bmw2k", description="Exact computations in the two-strand cyclotomic BMW algebra.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("parameter source")
    src.add_argument("--params", metavar="FILE", help="parameter file (JSON)")
    src.add_argument("--generic", action="store_true", help="generic admissible parameters over Q(q, lambda, q1..)")
    src.add_argument("--fp", type=int, metavar="P", help="seeded random admissible parameters over F_P")
    src.add_argument("--k", type=int, help="order of the cyclotomic relation")
    src.add_argument("--sign", default="plus", choices=["plus", "minus", "+", "-"], help="root of beta = 0 used for q0")
    src.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--format", default="json", choices=["json", "pretty"])

    sub.add_parser("admissible", parents=[common], help="admissibility report")
    sub.add_parser("generic-params", parents=[common], help="print an admissible parameter set")
    p = sub.add_parser("verify", parents=[common], help="verify V, Xi, the basis words and the 3x3 check")
    p.add_argument("--residuals", action="store_true", help="include residual matrices of failed relations")
    p = sub.add_parser("reduce", parents=[common], help="basis expansion of a word")
    p.add_argument("--word", action="append", required=True)
    p = sub.add_parser("multiply", parents=[common], help="product of words or elements")
    p.add_argument("operands", nargs="+", help="a word, or a JSON object mapping basis labels to scalars")
    sub.add_parser("structure-constants", parents=[common], help="stream nonzero structure constants as JSON lines")
    sub.add_parser("hecke-check", parents=[common], help="check the quotient by the ideal generated by e")
    sub.add_parser("ideal-check", parents=[common], help="check the ideal generated by e")
    sub.add_parser("matrices", parents=[common], help="dump the generator matrices on Xi")
    return parser


def _dump(obj, fmt: str) -> str:
    if fmt == "pretty":
        return json.dumps(obj, indent=2)
    return json.dumps(obj)


def _parse_operand(alg: Algebra, text: str):
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        coeffs = [alg.domain.zero] * alg.dim
        for label, value in data.items():
            try:
                t = alg.labels.index(label)
            except ValueError:
                raise UsageError(f"unknown basis label {label!r}") from None
            coeffs[t] = alg.domain.parse(str(value))
        return alg.element(coeffs)
    return reduce_word(alg, text)


def run(cfg: RunConfig, ps: ParamSet, out, err) -> int:
    cmd = cfg.command

    if cmd == "generic-params":
        out.write(_dump(ps.to_dict(), cfg.fmt) + "\n")
        return EXIT_OK

    if cmd == "admissible":
        report = admissibility_report(ps)
        out.write(_dump(report.to_dict(), cfg.fmt) + "\n")
        err.write(f"admissible: {report.admissible}\n")
        return EXIT_OK if report.admissible else EXIT_FAILED

    if cmd == "verify":
        adm = admissibility_report(ps)
        vrep = build_v(ps)
        rv = verify_v(vrep)
        xi = build_xi(ps, vrep)
        rx = verify_xi(xi)
        bad_phi = phi_mismatches(Algebra(xi))
        t3 = three_by_three_check(ps)
        ok = adm.admissible and rv.passed and rx.passed and not bad_phi and t3
        payload = {
            "k": ps.k,
            "passed": ok,
            "admissibility": adm.to_dict(),
            "V": rv.to_dict(cfg.residuals),
            "Xi": rx.to_dict(cfg.residuals),
            "phi": {"passed": not bad_phi, "mismatched_basis_words": bad_phi},
            "three_by_three": t3,
        }
        out.write(_dump(payload, cfg.fmt) + "\n")
        err.write(
            f"k={ps.k}: admissible={adm.admissible} V={rv.passed} Xi={rx.passed} "
            f"phi={not bad_phi} 3x3={t3}\n"
        )
        for name in rv.failures():
            err.write(f"  V fails: {name}\n")
        for name in rx.failures():
            err.write(f"  Xi fails: {name}\n")
        return EXIT_OK if ok else EXIT_FAILED

    alg = Algebra.from_params(ps)

    if cmd == "reduce":
        elem = reduce_word(alg, cfg.words[0])
        out.write(_dump(elem.to_dict(), cfg.fmt) + "\n")
        return EXIT_OK

    if cmd == "multiply":
        result = one_element(alg)
        for operand in cfg.words:
            result = multiply(result, _parse_operand(alg, operand))
        out.write(_dump(result.to_dict(), cfg.fmt) + "\n")
        return EXIT_OK

    if cmd == "structure-constants":
        count = 0
        for rec in structure_constant_records(alg):
            out.write(json.dumps(rec) + "\n")
            count += 1
        err.write(f"{count} nonzero structure constants for k={ps.k}\n")
        return EXIT_OK

    if cmd == "hecke-check":
        report = hecke_quotient_check(alg)
        out.write(_dump(report.to_dict(), cfg.fmt) + "\n")
        err.write(f"hecke quotient: dimension {report.dimension}, passed={report.passed}\n")
        return EXIT_OK if report.passed else EXIT_FAILED

    if cmd == "ideal-check":
        report = ideal_check(alg)
        out.write(_dump(report.to_dict(), cfg.fmt) + "\n")
        err.write(f"ideal generated by e: passed={report.passed}\n")
        return EXIT_OK if report.passed else EXIT_FAILED

    if cmd == "matrices":
        out.write(_dump(xi_matrices_dict(alg.rep), cfg.fmt) + "\n")
        return EXIT_OK

    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(ns)
    except UsageError as exc:
        stderr.write(f"bmw2k: {exc}\n")
        return EXIT_USAGE
    try:
        ps = cfg.load()
    except ParamFileError as exc:
        stderr.write(f"bmw2k: parameter error: {exc}\n")
        return EXIT_PARAMS
    try:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                return run(cfg, ps, fh, stderr)
        return run(cfg, ps, stdout, stderr)
    except (UsageError, WordError, CoeffError, json.JSONDecodeError) as exc:
        stderr.write(f"bmw2k: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
