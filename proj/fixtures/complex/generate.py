#!/usr/bin/env python3
"""Regenerates the twelve complex-field fixtures.

Each fixture states one goal over the shared signature and lists exactly the
axioms its proof needs (the premises a user would hand to the translator).
"""

import os

HERE = os.path.dirname(os.path.abspath(__file__))

SORTS = """\
(declare-sort real 0)
(declare-sort nat 0)
"""

NAT_DECLS = """\
(declare-const n.zero nat)
(declare-const n.one nat)
(declare-const n.two nat)
(declare-fun n.add (nat nat) nat)
(declare-fun n.mul (nat nat) nat)
"""

REAL_DECLS = """\
(declare-fun r.add (real real) real)
(declare-fun r.mul (real real) real)
(declare-fun r.neg (real) real)
(declare-fun r.iota (nat) real)
(declare-fun r.inv (nat) real)
(declare-fun r.sin (real) real)
(declare-fun r.cos (real) real)
(declare-const r.pi real)
(declare-const r.zero real)
(declare-const r.one real)
(declare-fun r.sub (real real) real)
(declare-fun r.div (real nat) real)
"""

COMPLEX_DECLS = """\
(declare-datatype complex ((c.mk (c.re real) (c.im real))))
(declare-fun c.add (complex complex) complex)
(declare-fun c.neg (complex) complex)
(declare-fun c.mul (complex complex) complex)
(declare-fun c.iota (nat) complex)
(declare-const c.zero complex)
(declare-const c.one complex)
(declare-fun c.exp (real) complex)
(declare-fun c.omega (nat nat) complex)
"""

AXIOMS = {
    # definitional equations
    "r.zero-def": "(assert (! (forall () (= r.zero (r.iota n.zero))) :named r.zero-def))",
    "r.one-def": "(assert (! (forall () (= r.one (r.iota n.one))) :named r.one-def))",
    "r.sub-def": "(assert (! (forall ((a real) (b real)) (= (r.sub a b) (r.add a (r.neg b)))) :named r.sub-def))",
    "r.div-def": "(assert (! (forall ((a real) (n nat)) (= (r.div a n) (r.mul a (r.inv n)))) :named r.div-def))",
    "c.add-def": "(assert (! (forall ((a real) (b real) (c real) (d real)) (= (c.add (c.mk a b) (c.mk c d)) (c.mk (r.add a c) (r.add b d)))) :named c.add-def))",
    "c.neg-def": "(assert (! (forall ((a real) (b real)) (= (c.neg (c.mk a b)) (c.mk (r.neg a) (r.neg b)))) :named c.neg-def))",
    "c.mul-def": "(assert (! (forall ((a real) (b real) (c real) (d real)) (= (c.mul (c.mk a b) (c.mk c d)) (c.mk (r.sub (r.mul a c) (r.mul b d)) (r.add (r.mul a d) (r.mul b c))))) :named c.mul-def))",
    "c.iota-def": "(assert (! (forall ((n nat)) (= (c.iota n) (c.mk (r.iota n) r.zero))) :named c.iota-def))",
    "c.zero-def": "(assert (! (forall () (= c.zero (c.iota n.zero))) :named c.zero-def))",
    "c.one-def": "(assert (! (forall () (= c.one (c.iota n.one))) :named c.one-def))",
    "c.exp-def": "(assert (! (forall ((x real)) (= (c.exp x) (c.mk (r.cos x) (r.sin x)))) :named c.exp-def))",
    "c.omega-def": "(assert (! (forall ((n nat) (k nat)) (= (c.omega n k) (c.exp (r.neg (r.div (r.mul (r.mul (r.iota n.two) r.pi) (r.iota k)) n))))) :named c.omega-def))",
    # the real commutative ring
    "r.add-assoc": "(assert (! (forall ((x real) (y real) (z real)) (= (r.add (r.add x y) z) (r.add x (r.add y z)))) :named r.add-assoc))",
    "r.add-comm": "(assert (! (forall ((x real) (y real)) (= (r.add x y) (r.add y x))) :named r.add-comm))",
    "r.add-idl": "(assert (! (forall ((x real)) (= (r.add r.zero x) x)) :named r.add-idl))",
    "r.add-invl": "(assert (! (forall ((x real)) (= (r.add (r.neg x) x) r.zero)) :named r.add-invl))",
    "r.mul-assoc": "(assert (! (forall ((x real) (y real) (z real)) (= (r.mul (r.mul x y) z) (r.mul x (r.mul y z)))) :named r.mul-assoc))",
    "r.mul-comm": "(assert (! (forall ((x real) (y real)) (= (r.mul x y) (r.mul y x))) :named r.mul-comm))",
    "r.mul-idl": "(assert (! (forall ((x real)) (= (r.mul r.one x) x)) :named r.mul-idl))",
    "r.mul-distl": "(assert (! (forall ((x real) (y real) (z real)) (= (r.mul x (r.add y z)) (r.add (r.mul x y) (r.mul x z)))) :named r.mul-distl))",
    # the embedding and the inverse
    "r.inv-mul": "(assert (! (forall ((n nat)) (= (r.mul (r.iota (n.add n.one n)) (r.inv n)) r.one)) :named r.inv-mul))",
    "r.iota-inj": "(assert (! (forall ((m nat) (n nat)) (=> (= (r.iota n) (r.iota m)) (= m n))) :named r.iota-inj))",
    "r.iota-add": "(assert (! (forall ((m nat) (n nat)) (= (r.iota (n.add m n)) (r.add (r.iota m) (r.iota n)))) :named r.iota-add))",
    "r.iota-mul": "(assert (! (forall ((m nat) (n nat)) (= (r.iota (n.mul m n)) (r.mul (r.iota m) (r.iota n)))) :named r.iota-mul))",
    # trigonometry
    "r.sin-neg": "(assert (! (forall ((x real)) (= (r.sin (r.neg x)) (r.neg (r.sin x)))) :named r.sin-neg))",
    "r.cos-neg": "(assert (! (forall ((x real)) (= (r.cos (r.neg x)) (r.cos x))) :named r.cos-neg))",
    "r.sin-2pin": "(assert (! (forall ((n nat)) (= (r.sin (r.mul (r.mul (r.iota n.two) r.pi) (r.iota n))) r.zero)) :named r.sin-2pin))",
    "r.cos-2pin": "(assert (! (forall ((n nat)) (= (r.cos (r.mul (r.mul (r.iota n.two) r.pi) (r.iota n))) r.one)) :named r.cos-2pin))",
    "r.sin-add": "(assert (! (forall ((x real) (y real)) (= (r.sin (r.add x y)) (r.add (r.mul (r.sin x) (r.cos y)) (r.mul (r.cos x) (r.sin y))))) :named r.sin-add))",
    "r.cos-add": "(assert (! (forall ((x real) (y real)) (= (r.cos (r.add x y)) (r.sub (r.mul (r.cos x) (r.cos y)) (r.mul (r.sin x) (r.sin y))))) :named r.cos-add))",
    # a property of the naturals: 1 + (x + y + x*y) = (1 + x) * (1 + y)
    "n.succ-product": "(assert (! (forall ((x nat) (y nat)) (= (n.add n.one (n.add (n.add x y) (n.mul x y))) (n.mul (n.add n.one x) (n.add n.one y)))) :named n.succ-product))",
}

RING_GROUP = ["r.add-assoc", "r.add-comm", "r.add-idl", "r.add-invl"]
RING_MUL = ["r.mul-assoc", "r.mul-comm", "r.mul-idl", "r.mul-distl"]

REAL_CONSTS = ["a1", "a2", "b1", "b2", "d1", "d2"]
NAT_CONSTS = ["x", "y", "z"]


def pair(re, im):
    return f"(c.mk {re} {im})"


FIXTURES = {
    # the eight ring properties of the pair representation
    "c01_add_assoc": {
        "axioms": ["c.add-def", "r.add-assoc"],
        "reals": 6,
        "goal": "(= (c.add (c.add {A} {B}) {D}) (c.add {A} (c.add {B} {D})))",
    },
    "c02_add_comm": {
        "axioms": ["c.add-def", "r.add-comm"],
        "reals": 4,
        "goal": "(= (c.add {A} {B}) (c.add {B} {A}))",
    },
    "c03_add_idl": {
        "axioms": ["c.zero-def", "c.iota-def", "c.add-def", "r.zero-def", "r.add-idl"],
        "reals": 2,
        "goal": "(= (c.add c.one-arg {A}) {A})".replace("c.one-arg", "c.zero"),
    },
    "c04_add_invl": {
        "axioms": ["c.neg-def", "c.add-def", "c.zero-def", "c.iota-def", "r.zero-def",
                    "r.add-invl"],
        "reals": 2,
        "goal": "(= (c.add (c.neg {A}) {A}) c.zero)",
    },
    "c05_mul_comm": {
        "axioms": ["c.mul-def", "r.mul-comm", "r.add-comm"],
        "reals": 4,
        "goal": "(= (c.mul {A} {B}) (c.mul {B} {A}))",
    },
    "c06_mul_idl": {
        "axioms": ["c.one-def", "c.iota-def", "c.mul-def", "r.one-def", "r.sub-def",
                    "r.mul-idl", "r.mul-comm", "r.mul-distl"] + RING_GROUP,
        "reals": 2,
        "goal": "(= (c.mul c.one {A}) {A})",
    },
    "c07_mul_assoc": {
        "axioms": ["c.mul-def", "r.sub-def"] + RING_MUL + RING_GROUP,
        "reals": 6,
        "goal": "(= (c.mul (c.mul {A} {B}) {D}) (c.mul {A} (c.mul {B} {D})))",
    },
    "c08_mul_distl": {
        "axioms": ["c.mul-def", "c.add-def", "r.sub-def", "r.mul-distl"] + RING_GROUP,
        "reals": 6,
        "goal": "(= (c.mul {A} (c.add {B} {D})) (c.add (c.mul {A} {B}) (c.mul {A} {D})))",
    },
    # the four roots-of-unity properties
    "c09_omega_zero": {
        "axioms": ["c.omega-def", "c.exp-def", "c.iota-def", "c.one-def", "r.div-def",
                    "r.zero-def", "r.one-def", "r.sin-neg", "r.cos-neg", "r.sin-2pin",
                    "r.cos-2pin", "r.mul-assoc", "r.mul-comm", "r.mul-distl"] + RING_GROUP,
        "nats": 1,
        "goal": "(= (c.omega x n.zero) c.one)",
    },
    "c10_omega_full_turns": {
        "axioms": ["c.omega-def", "c.exp-def", "c.iota-def", "c.one-def", "r.div-def",
                    "r.zero-def", "r.one-def", "r.iota-mul", "r.inv-mul", "r.sin-neg",
                    "r.cos-neg", "r.sin-2pin", "r.cos-2pin", "r.mul-assoc", "r.mul-comm",
                    "r.mul-idl"] + RING_GROUP,
        "nats": 2,
        "goal": "(= (c.omega x (n.mul (n.add n.one x) y)) c.one)",
    },
    "c11_omega_reduce": {
        "axioms": ["c.omega-def", "c.exp-def", "r.div-def", "n.succ-product", "r.iota-mul",
                    "r.inv-mul", "r.mul-assoc", "r.mul-comm", "r.mul-idl"],
        "nats": 3,
        "goal": "(= (c.omega (n.add (n.add x y) (n.mul x y)) (n.mul (n.add n.one x) z)) "
                "(c.omega y z))",
    },
    "c12_omega_add": {
        "axioms": ["c.omega-def", "c.exp-def", "c.mul-def", "r.div-def", "r.sub-def",
                    "r.iota-add", "r.sin-neg", "r.cos-neg", "r.sin-add", "r.cos-add",
                    "r.mul-comm", "r.mul-distl"] + RING_GROUP,
        "nats": 3,
        "goal": "(= (c.omega x (n.add y z)) (c.mul (c.omega x y) (c.omega x z)))",
    },
}


def emit(name, spec):
    lines = [SORTS, NAT_DECLS, REAL_DECLS, COMPLEX_DECLS]
    for ax in spec["axioms"]:
        lines.append(AXIOMS[ax] + "\n")
    reals = REAL_CONSTS[: spec.get("reals", 0)]
    nats = NAT_CONSTS[: spec.get("nats", 0)]
    for r in reals:
        lines.append(f"(declare-const {r} real)\n")
    for n in nats:
        lines.append(f"(declare-const {n} nat)\n")
    goal = spec["goal"]
    goal = goal.replace("{A}", pair("a1", "a2"))
    goal = goal.replace("{B}", pair("b1", "b2"))
    goal = goal.replace("{D}", pair("d1", "d2"))
    lines.append(f"(assert-not (! {goal} :named {name}))\n")
    with open(os.path.join(HERE, name + ".smt2"), "w") as f:
        f.write("".join(lines))


def main():
    for name, spec in FIXTURES.items():
        emit(name, spec)
    print(f"wrote {len(FIXTURES)} fixtures to {HERE}")


if __name__ == "__main__":
    main()
