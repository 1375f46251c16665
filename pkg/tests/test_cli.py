import json

import pytest
from click.testing import CliRunner

from partialprob.cli import cli, suites_for
from partialprob.dmf import kleene_algebra
from partialprob.lattice import FiniteLattice

from conftest import m4_dict

KLEENE_WEIGHTS = {"n": 1, "logic": "kleene", "weights": {"0": "1/2", "n": "1/4", "1": "1/4"}}
CLASSICAL_WEIGHTS = {
    "n": 2,
    "logic": "classical",
    "weights": {"00": "1/8", "01": "1/8", "10": "1/4", "11": "1/2"},
}
NOT_ISOTONE = {
    "n": 1,
    "logic": "kleene",
    "values": {"p0": ["1/2", "0"], "p0 | n": ["1/4", "0"]},
}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return _write


def test_eval(runner):
    result = runner.invoke(cli, ["eval", "--formula", "p0 & ~p0", "--world", "n"])
    assert result.exit_code == 0
    assert result.output == "n\n"

    result = runner.invoke(
        cli, ["eval", "--formula", "p0 | ~p1", "--world", "01", "--json"]
    )
    assert json.loads(result.output) == {
        "formula": "p0 | ~p1",
        "world": "01",
        "logic": "kleene",
        "value": "0",
    }


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--formula", "p0 & n", "--world", "1", "--logic", "classical"],
        ["eval", "--formula", "p0 & )", "--world", "1"],
        ["eval", "--formula", "p1", "--world", "1"],
        ["eval", "--formula", "p0", "--world", "x"],
    ],
)
def test_eval_usage_errors(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == 2
    assert "error:" in result.output


def test_consequence(runner):
    result = runner.invoke(
        cli, ["consequence", "--premises", "p0 & ~p0", "--conclusion", "n"]
    )
    assert result.exit_code == 0
    assert result.output == "holds\n"

    result = runner.invoke(cli, ["consequence", "--conclusion", "p0 | ~p0"])
    assert result.exit_code == 1
    assert result.output == "does not hold, counter-world n\n"

    result = runner.invoke(
        cli,
        ["consequence", "--conclusion", "p0 | ~p0", "--logic", "classical", "--json"],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["holds"]
    assert payload["n"] == 1
    assert payload["counter_world"] is None


def test_prob(runner, write):
    kleene = write("kleene.json", KLEENE_WEIGHTS)
    result = runner.invoke(cli, ["prob", "--weights", kleene, "--formula", "p0"])
    assert result.exit_code == 0
    assert result.output == "(1/4, 1/2)\n"

    result = runner.invoke(
        cli,
        ["prob", "--weights", kleene, "--formula", "p0", "--given", "p0 | ~p0", "--json"],
    )
    assert json.loads(result.output) == {
        "formula": "p0",
        "given": "p0 | ~p0",
        "value": ["1/3", "2/3"],
    }

    classical = write("classical.json", CLASSICAL_WEIGHTS)
    result = runner.invoke(
        cli, ["prob", "--weights", classical, "--formula", "p0", "--given", "p1"]
    )
    assert result.output == "4/5\n"


@pytest.mark.parametrize(
    "weights,formula,given,code",
    [
        (KLEENE_WEIGHTS, "p0", "n", 3),
        (KLEENE_WEIGHTS, "p0", "p0 & ~p0", 3),
        (CLASSICAL_WEIGHTS, "p0", "p0 & ~p0", 3),
        (KLEENE_WEIGHTS, "p3", None, 2),
        (CLASSICAL_WEIGHTS, "p0 | n", None, 2),
        ({"n": 1, "logic": "kleene", "weights": {"0": "1/2"}}, "p0", None, 2),
    ],
)
def test_prob_errors(runner, write, weights, formula, given, code):
    args = ["prob", "--weights", write("w.json", weights), "--formula", formula]
    if given is not None:
        args += ["--given", given]
    result = runner.invoke(cli, args)
    assert result.exit_code == code


def test_bayes(runner, write):
    kleene = write("kleene.json", KLEENE_WEIGHTS)
    result = runner.invoke(
        cli,
        ["bayes", "--weights", kleene, "--hypothesis", "1", "--evidence", "p0 | ~p0"],
    )
    assert result.exit_code == 0
    assert result.output == "lhs = (1, 0)\nrhs = (1, 0)\n"

    result = runner.invoke(
        cli,
        ["bayes", "--weights", kleene, "--hypothesis", "p0", "--evidence", "p0", "--posneg"],
    )
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "lhs = (1, 0)",
        "rhs = (1, 0)",
        "given nabla = (1/3, 2/3)",
        "given negative = (0, 1)",
        "bias = 2",
    ]

    classical = write("classical.json", CLASSICAL_WEIGHTS)
    result = runner.invoke(
        cli,
        [
            "bayes",
            "--weights",
            classical,
            "--hypothesis",
            "p0",
            "--evidence",
            "p1",
            "--json",
        ],
    )
    payload = json.loads(result.output)
    assert payload["lhs"] == payload["rhs"] == "4/5"
    assert payload["equal"]


def test_translate_sentences_to_space(runner, write):
    result = runner.invoke(
        cli,
        ["translate", "--direction", "s2e", "--input", write("k.json", KLEENE_WEIGHTS)],
    )
    assert result.exit_code == 0
    assert result.output.splitlines()[:5] == [
        "direction: s2e",
        "logic: partial",
        "n: 1",
        "size: 11",
        "passed: yes",
    ]

    result = runner.invoke(
        cli,
        [
            "translate",
            "--direction",
            "s2e",
            "--logic",
            "classical",
            "--input",
            write("c.json", CLASSICAL_WEIGHTS),
            "--json",
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["passed"]
    assert payload["measure"]["{11}"] == "1/2"


def test_translate_errors(runner, write):
    args = ["translate", "--direction", "s2e", "--input"]
    result = runner.invoke(cli, [*args, write("audit.json", NOT_ISOTONE)])
    assert result.exit_code == 3
    assert "isotone" in result.output

    result = runner.invoke(
        cli, [*args, write("k.json", KLEENE_WEIGHTS), "--logic", "classical"]
    )
    assert result.exit_code == 2

    result = runner.invoke(
        cli,
        [
            "translate",
            "--direction",
            "e2s",
            "--input",
            write("space.json", {"space": ["a", "b"]}),
        ],
    )
    assert result.exit_code == 2


def test_translate_space_to_sentences(runner, write):
    result = runner.invoke(
        cli,
        [
            "translate",
            "--direction",
            "e2s",
            "--logic",
            "classical",
            "--input",
            write("c.json", {"weights": {"a": "1/2", "b": "1/2"}}),
        ],
    )
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert "m: 2" in lines
    assert "k: 1" in lines

    result = runner.invoke(
        cli,
        [
            "translate",
            "--direction",
            "e2s",
            "--input",
            write("p.json", {"space": ["a", "b"], "weights": {"a": "1/2", "b": "1/2"}}),
            "--json",
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["j"] == 1
    assert payload["generators"] == ["{a}|{b}"]
    assert payload["eta_certified"]
    assert payload["witnesses"]["{a}|{b}"] == "p0"


def test_suites_for(square):
    assert suites_for(square.to_dict()) == ["lattice"]
    assert suites_for(m4_dict()) == ["lattice", "dmf"]
    assert suites_for({"space": ["a"], "weights": {"a": 1}}) == ["measure"]
    assert suites_for({"elements": []}) == []


def test_check(runner, write, square, pentagon_dict):
    result = runner.invoke(
        cli, ["check", "--input", write("m4.json", m4_dict())]
    )
    assert result.exit_code == 1
    assert "[lattice]: pass" in result.output
    assert "[dmf]: FAIL" in result.output
    assert "normality" in result.output

    valuation = {
        **square.to_dict(),
        "values": {"00": 0, "01": "1/4", "10": "3/4", "11": 1},
    }
    kleene = {
        **kleene_algebra().to_dict(),
        "values": {"0": ["0", "1"], "n": ["0", "0"], "1": ["1", "0"]},
    }
    result = runner.invoke(
        cli,
        [
            "check",
            "--input",
            write("square.json", valuation),
            "--input",
            write("pentagon.json", pentagon_dict),
            "--input",
            write("kleene.json", kleene),
            "--json",
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["passed"]
    assert [report["suite"] for report in payload["reports"]] == [
        "lattice",
        "valuation",
        "lattice",
        "lattice",
        "dmf",
        "valuation",
    ]

    result = runner.invoke(
        cli,
        [
            "check",
            "--suite",
            "measure",
            "--input",
            write("space.json", {"space": ["a", "b"], "weights": {"a": "1/3", "b": "2/3"}}),
        ],
    )
    assert result.exit_code == 0
    assert "[measure]: pass" in result.output


@pytest.mark.parametrize(
    "payload,suite",
    [
        ("not json", "all"),
        ("[1, 2]", "all"),
        ({"unrelated": 1}, "all"),
        (FiniteLattice.chain(2).to_dict(), "dmf"),
    ],
)
def test_check_usage_errors(runner, write, payload, suite):
    result = runner.invoke(
        cli, ["check", "--suite", suite, "--input", write("bad.json", payload)]
    )
    assert result.exit_code == 2
