"""Fixtures and random generators shared by the test modules."""

from __future__ import annotations

import os
import random

from ultraleavitt import VSet, make_ultragraph
from ultraleavitt.algebra import LeavittContext, Monomial
from ultraleavitt.algebra.representation import RepState, Representation
from ultraleavitt.core import paths_up_to
from ultraleavitt.setalgebra import cell_pool

SEED = int(os.environ.get("ULTRALEAVITT_SEED", "20240601"))

# one line per acceptance criterion, printed in the pytest summary
ACCEPTANCE_LINES: list[str] = []


def rng(offset: int = 0) -> random.Random:
    return random.Random(SEED + offset)


def u1():
    return make_ultragraph(["v0"], ["W"], [("e", "v0", VSet.family("W"))], name="U1")


def u2():
    return make_ultragraph(["v1", "v2"], [], [("1", "v1", ["v1", "v2"]), ("2", "v2", ["v1"])], name="U2")


def u3():
    return make_ultragraph(["v"], [], [], name="U3")


def u4():
    return make_ultragraph(["u", "x", "y"], [], [("f", "u", ["x"], True), ("g", "u", ["y"])], name="U4")


def u5():
    return make_ultragraph(["v"], [], [("l", "v", ["v"])], name="U5")


def u5_exit():
    return make_ultragraph(["v", "x"], [], [("l", "v", ["v"]), ("h", "v", ["x"])], name="U5+exit")


FIXTURES = {"U1": u1, "U2": u2, "U3": u3, "U4": u4, "U5": u5}


class Sampler:
    """Random monomials, elements and probe vectors for a plain context."""

    def __init__(self, ctx: LeavittContext, r: random.Random, depth: int = 2):
        self.ctx = ctx
        self.rng = r
        U = ctx.graph
        self.paths = [()] + (paths_up_to(U, depth) if U.edges else [])
        self.cells = cell_pool(U)
        self.rep = None if ctx.is_quotient else Representation(ctx)

    def monomial(self, degree: int | None = None):
        """A nonzero monomial element ``s_alpha p_A s_beta*`` (optionally of fixed degree)."""
        ctx = self.ctx
        for _ in range(1000):
            a = self.rng.choice(self.paths)
            b = self.rng.choice(self.paths)
            if degree is not None and len(a) - len(b) != degree:
                continue
            A = self.rng.choice(self.cells)
            if not a and not b:
                x = ctx.p(A)
            else:
                x = ctx.monomial(a, A, b)
            if x:
                return x
        raise RuntimeError("no monomial found")

    def raw_monomial(self) -> Monomial:
        """A monomial ``(alpha, A, beta)`` with ``A`` a nonempty cell inside ``r(alpha) & r(beta)``."""
        ctx = self.ctx
        for _ in range(1000):
            a = self.rng.choice(self.paths)
            b = self.rng.choice(self.paths)
            A = self.rng.choice(self.cells)
            for path in (a, b):
                if path:
                    A = A & ctx.path_range(path)
            if a and b and ctx.source(a[0]) != ctx.source(b[0]):
                continue
            if A:
                return Monomial(a, A, b)
        raise RuntimeError("no monomial found")

    def element(self, terms: int = 3, degree: int | None = None):
        x = self.ctx.zero()
        for _ in range(self.rng.randint(1, terms)):
            c = self.ctx.ring.random_element(self.rng, nonzero=True)
            x = x + self.monomial(degree) * c
        return x

    def probe(self) -> RepState:
        rep, ring = self.rep, self.ctx.ring
        verts = rep.probe_vertices()
        v = RepState(ring)
        for _ in range(self.rng.randint(1, 3)):
            b = rep.random_basis(self.rng, verts)
            for _ in range(self.rng.randint(0, 2)):
                refs = [i for i in self.ctx.graph.instances(2) if rep.owner(b) in self.ctx.range(i)]
                if refs:
                    b = next(iter(rep.apply_s(self.rng.choice(refs), RepState.basis(ring, b))))
            v.add(b, ring.random_element(self.rng, nonzero=True))
        return v
