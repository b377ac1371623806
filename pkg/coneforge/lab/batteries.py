# This file is part of "coneforge" which is released under GPL.
#
# See file LICENCE or go to http://www.gnu.org/licenses/ for full license
# details.
#
# coneforge is a numerical toolkit for Euclidean Jordan algebras and their
# symmetric cones.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

from typing import List
from typing import Tuple

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import box
from coneforge.algebra.core import det
from coneforge.algebra.core import identity
from coneforge.algebra.core import inner
from coneforge.algebra.core import jordan_product
from coneforge.algebra.core import lmap
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import square
from coneforge.algebra.core import trace
from coneforge.algebra.core import trace_inner
from coneforge.algebra.lorentz import LorentzFrame
from coneforge.algebra.lorentz import in_lorentz_half_space
from coneforge.algebra.lorentz import lorentz_quad_sqrt_apply
from coneforge.algebra.lorentz import lorentz_spectral
from coneforge.algebra.lorentz import lorentz_t_apply
from coneforge.algebra.lorentz import lorentz_triangular_params
from coneforge.algebra.symreal import FrobeniusMatrix
from coneforge.algebra.symreal import cholesky_ldl
from coneforge.algebra.symreal import element_to_matrix
from coneforge.algebra.symreal import frobenius_element
from coneforge.lab import Law
from coneforge.lab.laws import w1_apply
from coneforge.lab.report import Pair
from coneforge.lab.report import ResidualReport
from coneforge.lab.report import run_law
from coneforge.lab.sampling import random_automorphism
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_element
from coneforge.lab.sampling import random_exponents
from coneforge.lab.sampling import random_frame
from coneforge.peirce import JordanFrame
from coneforge.peirce import joint_peirce
from coneforge.peirce import nonorthogonal_split
from coneforge.peirce import standard_frame
from coneforge.triangular import delta_s
from coneforge.triangular import frobenius
from coneforge.triangular import principal_minor
from coneforge.triangular import random_triangular
from coneforge.triangular import t_apply
from coneforge.triangular import triangular_decompose


# Idempotent pairs are redrawn until <a, b> falls in this range
SPLIT_RANGE = (1e-3, 1 - 1e-3)
MAX_SPLIT_DRAWS = 100
# Singular values below this count as zero in block dimensions
RANK_EPS = 1e-8


def axiom_battery(
    desc: AlgebraDescriptor,
    n_samples: int = 500,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Commutativity, the Jordan identity and associativity of the scalar
    product on random triples.
    """

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y, z = (random_element(desc, rng) for _ in range(3))
        x2 = square(x)
        return [
            (jordan_product(x, y).coords, jordan_product(y, x).coords),
            (
                jordan_product(x, jordan_product(x2, y)).coords,
                jordan_product(x2, jordan_product(x, y)).coords,
            ),
            (inner(x, jordan_product(y, z)), inner(jordan_product(x, y), z)),
        ]

    return run_law(Law.AXIOMS, check, n_samples, seed, tol, workers)


def _idempotent_pair(
    desc: AlgebraDescriptor, rng: np.random.Generator
) -> Tuple[Element, Element]:
    c0 = standard_frame(desc)[0]
    low, high = SPLIT_RANGE
    for _ in range(MAX_SPLIT_DRAWS):
        a = random_automorphism(desc, rng)(c0)
        b = random_automorphism(desc, rng)(c0)
        if low <= trace_inner(a, b) <= high:
            return a, b
    raise InvalidInput(f"No admissible idempotent pair in {MAX_SPLIT_DRAWS} draws")


def split_battery(
    desc: AlgebraDescriptor,
    n_samples: int = 200,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Split random pairs of non-orthogonal primitive idempotents.

    Each split must reconstruct ``b``, produce a primitive idempotent ``c``
    orthogonal to ``a`` and a ``z`` of squared norm 2 in both Peirce spaces
    for 1/2.
    """
    if desc.rank < 2:
        raise InvalidInput("Splitting needs rank at least 2")

    def check(rng: np.random.Generator) -> List[Pair]:
        a, b = _idempotent_pair(desc, rng)
        split = nonorthogonal_split(a, b, tol)
        lam, mu, c, z = split.lam, split.mu, split.c, split.z
        return [
            (b.coords, (lam**2 * a + mu**2 * c + (lam * mu) * z).coords),
            (lam**2 + mu**2, 1.0),
            (trace_inner(a, c), 0.0),
            (square(c).coords, c.coords),
            (trace(c), 1.0),
            (trace_inner(z, z), 2.0),
            (lmap(a)(z).coords, 0.5 * z.coords),
            (lmap(c)(z).coords, 0.5 * z.coords),
        ]

    return run_law(Law.SPLIT, check, n_samples, seed, tol, workers)


def _half_block(
    frame: JordanFrame, rng: np.random.Generator, i: int, j: int
) -> Element:
    return joint_peirce(random_element(frame.descriptor, rng), frame)[(i, j)]


def formula_battery(
    desc: AlgebraDescriptor,
    n_samples: int = 200,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Frobenius and quadratic representation formulas on random frames.

    Covered are ``tau_a(z)`` on ``e`` and ``a``, ``P(al a + be b + ga z)`` on
    ``a`` and ``z``, ``P(x^(1/2)) y = xy`` for a shared frame, the squares and
    products of Peirce blocks, the nilpotency of ``2 z[]c``, the dimension ``d``
    of the blocks ``E_ij`` and the symmetry ``det(P(x) y^2) = det(P(y) x^2)``.
    """
    if desc.rank < 2:
        raise InvalidInput("The formula battery needs rank at least 2")
    e = identity(desc)
    r = desc.rank

    def check(rng: np.random.Generator) -> List[Pair]:
        frame = random_frame(desc, rng)
        a, b = frame[0], frame[1]
        z = _half_block(frame, rng, 0, 1)
        z = np.sqrt(2 / trace_inner(z, z)) * z

        t = rng.uniform(-2.0, 2.0)
        tau = frobenius(a, t * z)
        al, be, ga = rng.uniform(-2.0, 2.0, 3)
        p = quad_rep(al * a + be * b + ga * z)

        x = frame.combine(rng.uniform(0.5, 2.0, r))
        y = frame.combine(rng.uniform(-2.0, 2.0, r))

        zc = Element(
            desc, np.sum([_half_block(frame, rng, 0, k).coords for k in range(1, r)], 0)
        )
        n = 2 * box(zc, a)

        std = standard_frame(desc)
        ranks = [
            np.linalg.matrix_rank(4 * (lmap(f[0]) @ lmap(f[1])).matrix, RANK_EPS)
            for f in (frame, std)
        ]

        xc, yc = random_cone_element(desc, rng), random_cone_element(desc, rng)

        u = _half_block(frame, rng, 0, 1)
        pairs = [
            (tau(e).coords, (e + t * z + t**2 * b).coords),
            (tau(a).coords, (a + t * z + t**2 * b).coords),
            (p(a).coords, (al**2 * a + ga**2 * b + (al * ga) * z).coords),
            (
                p(z).coords,
                (2 * al * ga * a + 2 * be * ga * b + (al * be + ga**2) * z).coords,
            ),
            (w1_apply(x, y).coords, jordan_product(x, y).coords),
            (square(u).coords, (0.5 * trace_inner(u, u) * (a + b)).coords),
            ((n @ n @ n).matrix, 0.0),
            (ranks, desc.peirce_constant),
            (det(quad_rep(xc)(square(yc))), det(quad_rep(yc)(square(xc)))),
            (det(quad_rep(xc)(square(yc))), (det(xc) * det(yc)) ** 2),
        ]
        if r > 2:
            v = _half_block(frame, rng, 1, 2)
            uv = jordan_product(u, v)
            pairs.append(
                (trace_inner(uv, uv), trace_inner(u, u) * trace_inner(v, v) / 8)
            )
        return pairs

    return run_law(Law.FORMULAS, check, n_samples, seed, tol, workers)


def triangular_battery(
    desc: AlgebraDescriptor,
    n_samples: int = 500,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Triangular decompositions and power functions.

    On a random frame the decomposition must reconstruct the element, be a
    fixed point of decompose and reconstruct, and satisfy
    ``D_s(t x) = D_s(t e) D_s(x)`` and ``D_s(tau_{c_j}(z) e) = 1``. On symmetric
    matrices the standard frame parameters are compared with LDL^T.
    """
    e = identity(desc)

    def check(rng: np.random.Generator) -> List[Pair]:
        x = random_cone_element(desc, rng)
        frame = random_frame(desc, rng)
        d = triangular_decompose(x, frame, tol)
        fixed = triangular_decompose(t_apply(d, e), frame, tol)

        s = random_exponents(desc.rank, rng)
        t = random_triangular(frame, rng)
        tx = t_apply(t, x)

        pairs: List[Pair] = [
            (t_apply(d, e).coords, x.coords),
            (fixed.diag, d.diag),
            (
                delta_s(tx, s, frame),
                delta_s(t_apply(t, e), s, frame) * delta_s(x, s, frame),
            ),
        ]
        pairs.extend((a.coords, b.coords) for a, b in zip(fixed.offdiag, d.offdiag))
        for c, z in zip(frame, t.offdiag):
            a1, a2 = rng.uniform(-1.0, 1.0, 2)
            pairs.append((delta_s(frobenius(c, z)(e), s, frame), 1.0))
            pairs.append(
                (
                    (frobenius(c, a1 * z) @ frobenius(c, a2 * z)).matrix,
                    frobenius(c, (a1 + a2) * z).matrix,
                )
            )

        if desc.kind is AlgebraKind.SYM_REAL:
            std = standard_frame(desc)
            lower, diag = cholesky_ldl(element_to_matrix(x))
            ds = triangular_decompose(x, std, tol)
            pairs.append((ds.diag, diag))
            for j, z in enumerate(ds.offdiag):
                f = FrobeniusMatrix(j, lower[j + 1 :, j])
                pairs.append((z.coords, frobenius_element(f).coords))
        return pairs

    return run_law(Law.TRIANGULAR, check, n_samples, seed, tol, workers)


def closed_form_battery(
    desc: AlgebraDescriptor,
    n_samples: int = 500,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Compare the Lorentz closed forms with the generic machinery.

    The closed-form ``z`` must also lie in the half space ``E_12`` of ``u``.
    """
    if desc.kind is not AlgebraKind.LORENTZ:
        raise InvalidInput(f"Closed forms need a Lorentz algebra, got {desc}")
    n = desc.ambient_dim - 1

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        frame = LorentzFrame(u)

        params = lorentz_triangular_params(y, u)
        d = triangular_decompose(y, frame.frame, tol)
        spectral = lorentz_spectral(x)

        return [
            (lorentz_quad_sqrt_apply(x, y).coords, w1_apply(x, y).coords),
            (params.alpha1**2, d.diag[0]),
            (params.alpha2**2, d.diag[1]),
            (params.z.coords, d.offdiag[0].coords),
            (float(in_lorentz_half_space(params.z, u, tol)), 1.0),
            (lorentz_t_apply(y, x, u).coords, t_apply(d, x).coords),
            (principal_minor(y, 1, frame.frame), y.coords[0] + y.coords[1:] @ u),
            (spectral.reconstruct().coords, x.coords),
        ]

    return run_law(Law.CLOSED_FORMS, check, n_samples, seed, tol, workers)
