"""Tests de la línea de comandos"""

import json

import pytest

from main import build_parser, main, setup_config
from services.insertion import fiber
from services.serialization import loads_formal_sum, loads_twist


@pytest.mark.parametrize(
    "kind,k,n,esperado",
    [("acyclic", 2, 4, "22"), ("orientations", 2, 4, "18"), ("twists", 1, 5, "42")],
)
def test_count(capsys, kind, k, n, esperado):
    assert main(["count", kind, "-k", str(k), "-n", str(n)]) == 0
    assert capsys.readouterr().out.strip() == esperado


def test_count_cambrian_signature(capsys):
    assert main(["count", "cambrian", "-k", "2", "-n", "4", "--signature", "+-++"]) == 0
    assert capsys.readouterr().out.strip() == "24"


def test_insert_prints_a_twist(capsys):
    assert main(["insert", "-k", "2", "31542"]) == 0
    T = loads_twist(capsys.readouterr().out)
    assert fiber(T) == [(3, 1, 5, 4, 2), (3, 5, 1, 4, 2)]


def test_insert_contact_graph_as_dot(capsys):
    assert main(["insert", "-k", "1", "213", "--dot"]) == 0
    salida = capsys.readouterr().out
    assert salida.startswith("digraph")
    assert "->" in salida


def test_insert_ordered_partition(capsys):
    assert main(["insert", "-k", "2", "3|15|24"]) == 0
    datos = json.loads(capsys.readouterr().out)
    assert datos["twist"]["n"] == 5
    assert sorted(v for b in datos["hyperpipes"] for v in b) == list("12345")


def test_lattice_json_and_dot(capsys):
    assert main(["lattice", "-k", "1", "-n", "3", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["elements"]) == 5
    assert main(["lattice", "-n", "3", "--order", "weak", "--dot"]) == 0
    assert capsys.readouterr().out.count("->") == 6


def test_hopf_product_and_coproduct(capsys):
    assert main(["hopf", "product", "12", "1", "--json"]) == 0
    assert len(loads_formal_sum(capsys.readouterr().out)) == 3
    assert main(["hopf", "coproduct", "31542", "--basis", "P", "-k", "2", "--json"]) == 0
    assert len(loads_formal_sum(capsys.readouterr().out)) == 9
    assert main(["hopf", "product", "1|2", "2|13", "--basis", "O"]) == 0
    assert capsys.readouterr().out.startswith("O[")


def test_hopf_operand_count_is_checked(capsys):
    assert main(["hopf", "product", "12"]) == 1
    assert "❌" in capsys.readouterr().err


def test_bad_permutation_exits_with_error(capsys):
    assert main(["insert", "-k", "1", "122"]) == 1
    salida = capsys.readouterr()
    assert salida.out == ""
    assert "permutation" in salida.err


def test_budget_flag(capsys):
    assert main(["count", "twists", "-k", "2", "-n", "5", "--budget", "10"]) == 1
    assert "❌" in capsys.readouterr().err


def test_check_suite(capsys):
    assert main(["check", "serialization"]) == 0
    assert "✅ serialization" in capsys.readouterr().out


def test_flags_override_environment(monkeypatch):
    monkeypatch.setenv("TWISTLAB_JOBS", "3")
    args = build_parser().parse_args(["count", "twists", "-k", "1", "-n", "3", "--verbose"])
    config = setup_config(args)
    assert config.jobs == 3
    assert config.verbose
    args = build_parser().parse_args(["count", "twists", "-k", "1", "-n", "3", "--jobs", "2"])
    assert setup_config(args).jobs == 2
