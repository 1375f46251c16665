"""Command line interface of partialprob.

Every command prints a human readable result on standard output, or a
single JSON document with ``--json``. Exit codes: 0 success, 1 a checked
property fails, 2 usage or input error, 3 violated precondition.
"""
from __future__ import annotations

import functools
import json
import logging
import sys
from typing import Callable, Optional

import click

from .dmf import DmfAlgebra, dmf_laws
from .exceptions import (
    CapExceededError,
    FormulaError,
    InvalidConfigurationError,
    LawViolationError,
    PreconditionError,
    UndefinedValueError,
)
from .formula import Formula, parse
from .kleene import consequence, eval_classical, eval_kleene, world_label
from .lattice import FiniteLattice, Valuation, lattice_laws, valuation_laws
from .partial_set import (
    PartialField,
    PartialMeasure,
    associated_partial_space,
    partial_measure_laws,
)
from .partial_valuation import partial_valuation_laws
from .report import CheckResult, audit_table, table_passes
from .sentences import (
    AuditProbability,
    SentenceProbability,
    WorldWeights,
    classical_bayes,
    partial_posneg_identity,
    partial_weak_bayes,
)
from .translate import (
    TranslationCertificate,
    classical_sentences_to_space,
    classical_space_to_sentences,
    partial_sentences_to_space,
    partial_space_to_sentences,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

LATTICE_KEYS = {"elements", "meet", "join", "bottom", "top"}
DMF_KEYS = LATTICE_KEYS | {"neg", "fix"}
SUITES = ("lattice", "dmf", "valuation", "measure")


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    click.get_current_context().exit(code)


def handle_errors(command: Callable) -> Callable:
    """Translate library errors into the exit code contract."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except PreconditionError as error:
            _fail(EXIT_PRECONDITION, f"precondition '{error.condition}' fails: {error}")
        except (
            FormulaError,
            InvalidConfigurationError,
            UndefinedValueError,
            CapExceededError,
        ) as error:
            _fail(EXIT_USAGE, str(error))
        except LawViolationError as error:
            _fail(EXIT_FAILED, str(error))

    return wrapper


def _emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        click.echo(text)


def _load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as file:
            candidate = json.load(file)
    except json.JSONDecodeError as error:
        raise InvalidConfigurationError(f"{path} is not valid JSON: {error}")
    if not isinstance(candidate, dict):
        raise InvalidConfigurationError(f"{path} must hold a JSON object")
    return candidate


def _arity(formulas: list[Formula], n: Optional[int]) -> int:
    """Declared arity, or the highest variable index plus one."""
    if n is not None:
        return n
    return max((f.arity for f in formulas), default=0)


json_option = click.option(
    "--json", "as_json", is_flag=True, help="Print a JSON document."
)
logic_option = click.option(
    "--logic",
    type=click.Choice(["kleene", "classical"]),
    default="kleene",
    show_default=True,
)
weights_option = click.option(
    "--weights",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help='World weights, {"n": 1, "logic": "kleene", "weights": {...}}.',
)


@click.group()
@click.option("--verbose", is_flag=True, help="Log debug records on stderr.")
def cli(verbose: bool) -> None:
    """Exact partial probability over Kleene three-valued logic."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


# logic ========================================================================
@cli.command("eval")
@click.option("--formula", required=True)
@click.option("--world", required=True, help='Truth values, e.g. "0n1".')
@logic_option
@json_option
@handle_errors
def eval_command(formula: str, world: str, logic: str, as_json: bool) -> None:
    """Truth value of a formula in a world."""
    f = parse(formula, None, logic)
    value = eval_kleene(f, world) if logic == "kleene" else eval_classical(f, world)
    _emit(
        {
            "formula": str(f),
            "world": world_label(world),
            "logic": logic,
            "value": value,
        },
        value,
        as_json,
    )


@cli.command("consequence")
@click.option("--premises", default="", help="Comma separated premises.")
@click.option("--conclusion", required=True)
@click.option("--n", "n", type=click.IntRange(min=0), default=None)
@logic_option
@json_option
@handle_errors
def consequence_command(
    premises: str, conclusion: str, n: Optional[int], logic: str, as_json: bool
) -> None:
    """Whether the premises entail the conclusion."""
    gammas = [parse(text, None, logic) for text in premises.split(",") if text.strip()]
    alpha = parse(conclusion, None, logic)
    n = _arity([*gammas, alpha], n)
    result = consequence(gammas, alpha, n, logic)
    payload = {
        "premises": [str(g) for g in gammas],
        "conclusion": str(alpha),
        "n": n,
        "logic": logic,
        "holds": result.holds,
        "counter_world": result.counter_world,
    }
    text = "holds" if result else f"does not hold, counter-world {result.counter_world}"
    _emit(payload, text, as_json)
    click.get_current_context().exit(EXIT_OK if result else EXIT_FAILED)


# probability ==================================================================
def _probability_of(weights: WorldWeights, text: str) -> Formula:
    return parse(text, weights.n, weights.logic)


@cli.command("prob")
@weights_option
@click.option("--formula", required=True)
@click.option("--given", default=None, help="Condition on this formula.")
@json_option
@handle_errors
def prob_command(
    weights: str, formula: str, given: Optional[str], as_json: bool
) -> None:
    """Probability of a formula, optionally conditioned."""
    w = WorldWeights.from_dict(_load(weights))
    alpha = _probability_of(w, formula)
    pi = SentenceProbability(w)
    if given is not None:
        pi = pi.given(_probability_of(w, given))
    value = pi(alpha)
    payload = {
        "formula": str(alpha),
        "given": None if pi.condition is None else str(pi.condition),
        "value": value.to_list() if pi.kind == "partial" else str(value),
    }
    _emit(payload, str(value), as_json)


@cli.command("bayes")
@weights_option
@click.option("--hypothesis", required=True)
@click.option("--evidence", required=True)
@click.option("--posneg", is_flag=True, help="Condition on the parts of the evidence.")
@json_option
@handle_errors
def bayes_command(
    weights: str, hypothesis: str, evidence: str, posneg: bool, as_json: bool
) -> None:
    """Both sides of a Bayes identity; exit 0 iff they are equal."""
    w = WorldWeights.from_dict(_load(weights))
    h, e = _probability_of(w, hypothesis), _probability_of(w, evidence)
    extra = {}
    if posneg:
        identity = partial_posneg_identity(w, h, e)
        lhs, rhs = identity.lhs, identity.rhs
        extra = {
            "given nabla": identity.given_nabla,
            "given negative": identity.given_negative,
            "bias": identity.bias,
        }
    elif w.logic == "classical":
        lhs, rhs = classical_bayes(w, h, e)
    else:
        lhs, rhs = partial_weak_bayes(w, h, e)
    equal = lhs == rhs
    rows = {"lhs": lhs, "rhs": rhs, **extra}
    payload = {
        "hypothesis": str(h),
        "evidence": str(e),
        **{key.replace(" ", "_"): str(value) for key, value in rows.items()},
        "equal": equal,
    }
    text = "\n".join(f"{key} = {value}" for key, value in rows.items())
    _emit(payload, text, as_json)
    click.get_current_context().exit(EXIT_OK if equal else EXIT_FAILED)


# translations =================================================================
def _sentences_to_space(candidate: dict, logic: str) -> TranslationCertificate:
    expected = "classical" if logic == "classical" else "kleene"
    if "weights" in candidate:
        w = WorldWeights.from_dict(candidate)
        pi, n, corpus = SentenceProbability(w), w.n, None
        actual = w.logic
    else:
        audit = AuditProbability.from_dict(candidate)
        pi, n, corpus = audit, audit.n, audit.corpus
        actual = audit.logic
    if actual != expected:
        raise InvalidConfigurationError(f"{logic} translation of {actual} input")
    if logic == "classical":
        return classical_sentences_to_space(pi, n, corpus)
    return partial_sentences_to_space(pi, n, corpus)


def _space_to_sentences(candidate: dict, logic: str) -> TranslationCertificate:
    if logic == "classical":
        if "weights" not in candidate:
            raise InvalidConfigurationError("classical space needs 'weights'")
        return classical_space_to_sentences(candidate["weights"])
    field, mu = _field_and_measure(candidate)
    return partial_space_to_sentences(field, mu)


def _field_and_measure(candidate: dict) -> tuple[PartialField, PartialMeasure]:
    field = PartialField.from_dict(candidate)
    if "values" in candidate:
        return field, PartialMeasure.from_mapping(field, candidate["values"])
    if "weights" in candidate:
        return field, associated_partial_space(field, candidate["weights"])
    raise InvalidConfigurationError("partial space needs 'values' or 'weights'")


def _certificate_text(certificate: TranslationCertificate) -> str:
    lines = [f"direction: {certificate.direction}", f"logic: {certificate.logic}"]
    lines += [f"{key}: {value}" for key, value in certificate.details.items()]
    lines.append(f"passed: {'yes' if certificate.passed else 'no'}")
    lines.append(certificate.table.to_string(index=False))
    return "\n".join(lines)


@cli.command("translate")
@click.option("--direction", type=click.Choice(["s2e", "e2s"]), required=True)
@click.option(
    "--logic", type=click.Choice(["classical", "partial"]), default="partial"
)
@click.option(
    "--input", "path", required=True, type=click.Path(exists=True, dir_okay=False)
)
@json_option
@handle_errors
def translate_command(direction: str, logic: str, path: str, as_json: bool) -> None:
    """Translate between probabilities of sentences and of events."""
    candidate = _load(path)
    if direction == "s2e":
        certificate = _sentences_to_space(candidate, logic)
    else:
        certificate = _space_to_sentences(candidate, logic)
    if as_json:
        click.echo(certificate.to_json())
    else:
        click.echo(_certificate_text(certificate))
    if not certificate.passed:
        failure = certificate.first_failure
        click.echo(
            f"error: {failure['formula']}: {failure['sentence value']} != "
            f"{failure['event value']}",
            err=True,
        )
        click.get_current_context().exit(EXIT_FAILED)


# audits =======================================================================
def suites_for(candidate: dict) -> list[str]:
    """Every suite whose schema keys the candidate carries."""
    keys = set(candidate)
    suites = []
    if LATTICE_KEYS <= keys:
        suites.append("lattice")
    if DMF_KEYS <= keys:
        suites.append("dmf")
    if LATTICE_KEYS <= keys and "values" in keys:
        suites.append("valuation")
    if "space" in keys and keys & {"values", "weights"}:
        suites.append("measure")
    return suites


def _require(candidate: dict, keys: set[str], suite: str) -> None:
    missing = sorted(keys - set(candidate))
    if missing:
        raise InvalidConfigurationError(f"{suite} suite needs {missing}")


def _lattice_results(candidate: dict) -> list[CheckResult]:
    _require(candidate, LATTICE_KEYS, "lattice")
    return list(
        lattice_laws(
            candidate["elements"],
            candidate["meet"],
            candidate["join"],
            candidate["bottom"],
            candidate["top"],
        )
    )


def _dmf_results(candidate: dict) -> list[CheckResult]:
    _require(candidate, DMF_KEYS, "dmf")
    results = _lattice_results(candidate)
    if not table_passes(audit_table(results)):
        return results
    lattice = FiniteLattice.from_dict(candidate)
    return [*results, *dmf_laws(lattice, candidate["neg"], candidate["fix"])]


def _valuation_results(candidate: dict) -> list[CheckResult]:
    """Rational values give a lattice valuation; pairs of rationals over a
    DMF-algebra give a partial valuation."""
    _require(candidate, LATTICE_KEYS | {"values"}, "valuation")
    values = candidate["values"]
    partial = any(isinstance(value, list) for value in values.values())
    if not partial:
        lattice = FiniteLattice.from_dict(candidate)
        return list(valuation_laws(lattice, Valuation.from_mapping(lattice, values)))
    _require(candidate, DMF_KEYS, "valuation")
    algebra = DmfAlgebra.from_dict(candidate)
    v = PartialMeasure.from_mapping(algebra, values)
    return list(partial_valuation_laws(algebra, v))


def _measure_results(candidate: dict) -> list[CheckResult]:
    _require(candidate, {"space"}, "measure")
    field = PartialField.from_dict(candidate)
    if "values" in candidate:
        mu = PartialMeasure.from_mapping(field, candidate["values"])
    elif "weights" in candidate:
        mu = associated_partial_space(field, candidate["weights"])
    else:
        raise InvalidConfigurationError("measure suite needs 'values' or 'weights'")
    return list(partial_measure_laws(field, mu))


SUITE_RUNNERS = {
    "lattice": _lattice_results,
    "dmf": _dmf_results,
    "valuation": _valuation_results,
    "measure": _measure_results,
}


@cli.command("check")
@click.option(
    "--suite", type=click.Choice([*SUITES, "all"]), default="all", show_default=True
)
@click.option(
    "--input",
    "paths",
    required=True,
    multiple=True,
    type=click.Path(exists=True, dir_okay=False),
)
@json_option
@handle_errors
def check_command(suite: str, paths: tuple[str, ...], as_json: bool) -> None:
    """Certify lattices, DMF-algebras, valuations and measures."""
    reports = []
    for path in paths:
        candidate = _load(path)
        suites = suites_for(candidate) if suite == "all" else [suite]
        if not suites:
            raise InvalidConfigurationError(f"{path} matches no suite")
        for name in suites:
            table = audit_table(SUITE_RUNNERS[name](candidate))
            logger.debug("%s suite on %s: %d laws", name, path, len(table))
            reports.append((path, name, table))
    passed = all(table_passes(table) for _, _, table in reports)
    payload = {
        "passed": passed,
        "reports": [
            {
                "input": path,
                "suite": name,
                "passed": table_passes(table),
                "laws": [
                    {
                        **row,
                        "holds": bool(row["holds"]),
                        "required": bool(row["required"]),
                    }
                    for row in table.to_dict(orient="records")
                ],
            }
            for path, name, table in reports
        ],
    }
    text = "\n\n".join(
        f"{path} [{name}]: {'pass' if table_passes(table) else 'FAIL'}\n"
        f"{table.to_string(index=False)}"
        for path, name, table in reports
    )
    _emit(payload, text, as_json)
    click.get_current_context().exit(EXIT_OK if passed else EXIT_FAILED)


def main() -> None:
    cli(prog_name="partialprob")
