"""Smoke tests for the hornforge python module."""

import os
import pathlib

import pytest

hornforge = pytest.importorskip("hornforge")

FIXTURES = pathlib.Path(os.environ.get("HF_FIXTURES", "fixtures"))


def read(name: str) -> str:
    return (FIXTURES / name).read_text()


def test_parse_and_emit_round_trip():
    text = read("vectorspace.smt2")
    problem = hornforge.parse_problem(text)
    assert problem.goal_name == "vec.ze-uniq"
    assert problem.axiom_names == ["vec.neutl", "vec.negl", "vec.assoc"]
    assert problem.hypothesis_names == ["e"]
    emitted = hornforge.emit_problem(problem)
    again = hornforge.parse_problem(emitted)
    assert hornforge.emit_problem(again) == emitted


def test_prove_and_check_the_vector_space_goal():
    text = read("vectorspace.smt2")
    result = hornforge.prove(text)
    assert result["report"]["outcome"] == "proved"
    assert result["proof"].startswith("(proof")
    check = hornforge.check(text, result["proof"])
    assert check["outcome"] == "proved"


def test_prove_reports_saturation_on_unprovable_goals():
    result = hornforge.prove(read("unprovable.smt2"))
    assert result["report"]["outcome"] == "saturated"


def test_reconstruct_replays_an_external_derivation():
    problem = read("vectorspace_replay.smt2")
    derivation = read("vectorspace_replay.tstp")
    result = hornforge.reconstruct(problem, derivation)
    assert result["report"]["outcome"] == "proved"
    check = hornforge.check(problem, result["proof"])
    assert check["outcome"] == "proved"


def test_validate_step_flags_bogus_inferences():
    problem = read("vectorspace_replay.smt2")
    good = (
        "cnf(c1, axiom, plus(plus(X0,X1),X2) = plus(X0,plus(X1,X2)), file('f', assoc)).\n"
        "cnf(c2, axiom, ze = plus(neg(X0),X0), file('f', negl)).\n"
        "cnf(c3, plain, plus(neg(X0),plus(X0,X1)) = plus(ze,X1), "
        "inference(superposition,[],[c1,c2])).\n"
    )
    verdict = hornforge.validate_step(problem, good, "superposition")
    assert verdict["valid"]
    bogus = good.replace("plus(ze,X1)", "plus(ze,X0)")
    verdict = hornforge.validate_step(problem, bogus, "superposition")
    assert not verdict["valid"]


def test_mutated_proofs_are_rejected():
    import re

    text = read("vectorspace.smt2")
    proof = hornforge.prove(text)["proof"]
    # flip the final definition's orientation: drop its sym, or add one
    mutated = re.sub(r"\(sym (step-\d+)\)\)\n  \(qed", r"\1)\n  (qed", proof)
    if mutated == proof:
        mutated = re.sub(r"\n    (step-\d+)\)\n  \(qed", r"\n    (sym \1))\n  (qed", proof)
    assert mutated != proof, "proof shape changed; update the mutation"
    check = hornforge.check(text, mutated)
    assert check["outcome"] != "proved"
    assert "type error" in check["detail"]
