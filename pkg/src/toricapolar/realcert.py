"""Exact inertia, PSD ranks, real-rank certificates and the typical-rank sampler.

Everything here concerns real forms ``f`` of bidegree ``(2, 2d)`` on
P^1 x P^1 with ``B = (1, d)``, whose catalecticant ``phi_{f,B}`` is a
symmetric ``(2d+2) x (2d+2)`` matrix.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from joblib import Parallel, delayed

from .antipolar import (GENERICITY_ASSUMPTION, AntipolarForm, antipolar, point_square)
from .apolarity import catalecticant
from .errors import (DimensionError, EmptyStatisticsError, NotPSDError,
                     ShapeError, SingularCatalecticantError, SymmetryError)
from .exactalg import (BinaryForm, ExactMatrix, GradedForm, Ring, binary_form_positive,
                       charpoly, det_exact, rational_str, sign_samples)

COEFFICIENT_RANGE = (-9, 9)


# -- inertia --------------------------------------------------------------------------

@dataclass(frozen=True)
class SignatureReport:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self):
        return (self.n_plus, self.n_minus, self.n_zero)

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    def key(self) -> str:
        return f"{self.n_plus},{self.n_minus},{self.n_zero}"

    def to_json(self):
        return {"n_plus": self.n_plus, "n_minus": self.n_minus, "n_zero": self.n_zero}


def _sign_variations(coeffs) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(m) -> SignatureReport:
    """Inertia of a symmetric rational matrix.

    The characteristic polynomial of a real symmetric matrix has only real
    roots, so Descartes' rule of signs counts the positive ones exactly; the
    negative ones are counted on ``chi(-x)`` and zero eigenvalues by the
    trailing zero coefficients.

    >>> signature(ExactMatrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])).as_tuple()
    (1, 1, 1)
    """
    m = m if isinstance(m, ExactMatrix) else ExactMatrix(m)
    if not m.is_symmetric():
        raise SymmetryError("signature requires a symmetric matrix")
    chi = charpoly(m).coeffs
    n_zero = next(k for k, c in enumerate(chi) if c)
    tail = chi[n_zero:]
    n_plus = _sign_variations(tail)
    n_minus = _sign_variations([c if k % 2 == 0 else -c for k, c in enumerate(tail)])
    return SignatureReport(n_plus, n_minus, n_zero)


# -- helpers for bidegree (2, 2d) forms ---------------------------------------------

def _check_biform(f: GradedForm) -> int:
    if f.ring.block_sizes != (2, 2) or f.ring.params:
        raise ShapeError(f"expected a form on P^1 x P^1, got ring {f.ring}")
    if f.degree is None or f.degree[0] != 2 or f.degree[1] % 2:
        raise ShapeError(f"expected bidegree (2, 2d), got {f.degree}")
    return f.degree[1] // 2


def phi_symmetric(f: GradedForm, B) -> ExactMatrix:
    return catalecticant(f, B).as_symmetric()


def reznick_rank(f: GradedForm, B) -> int:
    """Real rank of ``f`` when ``phi_{f,B}`` is positive semidefinite.

    Raises
    ------
    NotPSDError
        If ``phi_{f,B}`` has a negative eigenvalue; the signature is attached.
    """
    phi = phi_symmetric(f, B)
    sig = signature(phi)
    if sig.n_minus:
        raise NotPSDError(f"phi_(f,B) is not positive semidefinite (signature {sig.as_tuple()})",
                          sig.as_tuple())
    return sig.rank


# -- boundary side ----------------------------------------------------------------------

class Side(str, enum.Enum):
    OMEGA_DEFINITE = "OMEGA_DEFINITE"
    OMEGA_HAS_REAL_ZERO = "OMEGA_HAS_REAL_ZERO"
    ON_BOUNDARY = "ON_BOUNDARY"

    def __str__(self):
        return self.value


@dataclass
class BoundarySide:
    """Verdict of :func:`omega_real_zero_exists` with its exact evidence.

    Attributes
    ----------
    side : Side
    D : BinaryForm
        ``4 A C - B^2`` in ``(t1, t2)``, where ``Omega = A s1^2 + B s1 s2 + C s2^2``.
    witness_t : tuple of Fraction or None
        A real point with ``D < 0`` (only for ``OMEGA_HAS_REAL_ZERO``).
    samples : list of tuple
        ``(t1, t2, sign of D)`` at one point in each sign cell, plus ``[1:0]``.
    """

    side: Side
    D: BinaryForm
    witness_t: tuple = None
    samples: list = field(default_factory=list)
    ABC: tuple = None

    def __eq__(self, other):
        if isinstance(other, (Side, str)):
            return self.side == other
        if isinstance(other, BoundarySide):
            return self.side == other.side and self.D == other.D
        return NotImplemented

    __hash__ = None

    def to_json(self):
        return {
            "side": self.side.value,
            "D": self.D.to_json(),
            "witness_t": None if self.witness_t is None else [rational_str(c) for c in self.witness_t],
            "samples": [{"t": [rational_str(a), rational_str(b)], "sign": s}
                        for a, b, s in self.samples],
        }


def _omega_form(omega) -> GradedForm:
    return omega.form if isinstance(omega, AntipolarForm) else omega


def omega_quadratic_parts(omega):
    """Split a ``(2, 2d)`` form as ``A(t) s1^2 + B(t) s1 s2 + C(t) s2^2``.

    Returns three :class:`BinaryForm` objects in ``(t1, t2)``.
    """
    g = _omega_form(omega)
    if g.ring.block_sizes != (2, 2) or g.ring.params:
        raise ShapeError(f"expected a form on P^1 x P^1, got ring {g.ring}")
    if g.degree is None or g.degree[0] != 2 or g.degree[1] % 2:
        raise ShapeError(f"expected bidegree (2, 2d), got {g.degree}")
    n = g.degree[1]
    names = g.ring.blocks[1]
    parts = []
    for s_exp in ((2, 0), (1, 1), (0, 2)):
        parts.append(BinaryForm([g.coefficient(s_exp + (k, n - k)) for k in range(n + 1)], names))
    return tuple(parts)


def _bf_mul(p: BinaryForm, q: BinaryForm) -> BinaryForm:
    out = [Fraction(0)] * (p.degree + q.degree + 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return BinaryForm(out, p.names)


def omega_real_zero_exists(omega) -> BoundarySide:
    """Decide whether ``Omega`` has a real projective zero, exactly.

    ``Omega(., t)`` is a binary quadratic in ``s`` with discriminant-type
    invariant ``D(t) = 4AC - B^2``.  It is definite at ``t`` iff ``D(t) > 0``.
    Hence ``Omega`` is definite everywhere iff ``D`` is a positive binary form,
    changes sign iff ``D`` takes a negative value, and otherwise (``D >= 0``
    with a real zero) sits on the boundary.
    """
    A, Bq, C = omega_quadratic_parts(omega)
    ac = _bf_mul(A, C)
    bb = _bf_mul(Bq, Bq)
    D = BinaryForm([4 * x - y for x, y in zip(ac.coeffs, bb.coeffs)], A.names)
    if D.is_zero():
        return BoundarySide(Side.ON_BOUNDARY, D, ABC=(A, Bq, C))
    if binary_form_positive(D):
        return BoundarySide(Side.OMEGA_DEFINITE, D, ABC=(A, Bq, C))
    pts = [(Fraction(1), Fraction(0))]
    p = D.to_unipoly()
    pts += [(x, Fraction(1)) for x in sign_samples(p)] if p.degree > 0 else [(Fraction(0), Fraction(1))]
    samples = []
    witness = None
    for t1, t2 in pts:
        v = D.evaluate(t1, t2)
        s = (v > 0) - (v < 0)
        samples.append((t1, t2, s))
        if s < 0 and witness is None:
            witness = (t1, t2)
    side = Side.OMEGA_HAS_REAL_ZERO if witness is not None else Side.ON_BOUNDARY
    return BoundarySide(side, D, witness, samples, ABC=(A, Bq, C))


# -- certificates ------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    REAL_RANK_EQ = "REAL_RANK_EQ"
    REAL_RANK_GE = "REAL_RANK_GE"
    PSD_RANK = "PSD_RANK"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self):
        return self.value


@dataclass
class RankCertificate:
    """Real-rank verdict with witness and recorded assumptions.

    ``label`` renders the verdict as ``"REAL_RANK_EQ(4)"`` and so on.
    """

    verdict: Verdict
    rank: int = None
    witness: dict = None
    assumptions: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.verdict is Verdict.INCONCLUSIVE:
            return "INCONCLUSIVE"
        return f"{self.verdict.value}({self.rank})"

    def to_json(self):
        return {"verdict": self.label, "kind": self.verdict.value, "rank": self.rank,
                "witness": self.witness, "assumptions": list(self.assumptions),
                "evidence": self.evidence}


def _positive_s(a, b, c):
    """A rational ``s`` with ``a s1^2 + b s1 s2 + c s2^2 > 0`` (indefinite case)."""
    if a > 0:
        return (Fraction(1), Fraction(0))
    if c > 0:
        return (Fraction(0), Fraction(1))
    if c < 0:
        return (Fraction(1), -b / (2 * c))
    return (Fraction(1), (abs(a) + 1) / b)


def rank_one_witness(f: GradedForm, omega: AntipolarForm, side: BoundarySide) -> dict:
    """Rational point ``l'`` and weight ``w > 0`` with ``phi_{f + w b(l')^2}`` PSD of corank one.

    Since ``det(phi_f) < 0`` and ``Omega(l') > 0``, the weight
    ``w = -det(phi_f) / Omega(l')`` makes the update singular; interlacing
    then forces it positive semidefinite of rank ``2d+1``.  The claim is
    verified by an exact signature computation.
    """
    d = omega.B[1]
    t1, t2 = side.witness_t
    A, Bq, C = side.ABC
    a, b, c = A.evaluate(t1, t2), Bq.evaluate(t1, t2), C.evaluate(t1, t2)
    s = _positive_s(a, b, c)
    point = (s, (t1, t2))
    val = omega(point)
    weight = -omega.det_phi / val
    g = f + point_square(f.ring, omega.B, point) * weight
    sig = signature(phi_symmetric(g, omega.B))
    return {
        "point": [[rational_str(v) for v in s], [rational_str(t1), rational_str(t2)]],
        "omega_at_point": rational_str(val),
        "weight": rational_str(weight),
        "updated_signature": list(sig.as_tuple()),
        "verified": sig.as_tuple() == (2 * d + 1, 0, 1),
        "decomposition": f"f = g - {weight} * b(l')^2 with phi_g PSD of rank {2 * d + 1}",
    }


def rank_certify(f: GradedForm) -> RankCertificate:
    """Real-rank certificate for a form of bidegree ``(2, 2d)`` on P^1 x P^1.

    * signature ``(2d+2, 0, 0)``: ``PSD_RANK(2d+2)``;
    * signature ``(2d+1, 1, 0)``: ``REAL_RANK_EQ(2d+2)`` when the antipolar
      has a real zero, ``REAL_RANK_GE(2d+3)`` when it is definite,
      ``INCONCLUSIVE`` on the boundary;
    * any other signature: ``INCONCLUSIVE``.

    Raises
    ------
    SingularCatalecticantError
        If ``phi_{f,(1,d)}`` is singular.
    """
    d = _check_biform(f)
    B = (1, d)
    phi = phi_symmetric(f, B)
    det_phi = det_exact(phi)
    if not det_phi:
        raise SingularCatalecticantError("phi_(f,B) is singular; the certificate needs full rank")
    sig = signature(phi)
    n = 2 * d + 2
    assumptions = [GENERICITY_ASSUMPTION,
                   f"the complex rank of f is the generic value {n}"]
    evidence = {"signature": list(sig.as_tuple()), "det_phi": rational_str(det_phi), "d": d}
    if sig.as_tuple() == (n, 0, 0):
        return RankCertificate(Verdict.PSD_RANK, n, None, ["phi_(f,B) positive definite"], evidence)
    if sig.as_tuple() != (n - 1, 1, 0):
        evidence["reason"] = "signature outside the certified case (2d+1, 1)"
        return RankCertificate(Verdict.INCONCLUSIVE, None, None, assumptions, evidence)
    assumptions.append("f is not in the dual cone of squares (automatic for signature (2d+1, 1))")
    omega = antipolar(f, B)
    side = omega_real_zero_exists(omega)
    evidence["boundary_side"] = side.to_json()
    evidence["antipolar"] = str(omega.form)
    if side.side is Side.OMEGA_HAS_REAL_ZERO:
        witness = rank_one_witness(f, omega, side)
        return RankCertificate(Verdict.REAL_RANK_EQ, n, witness, assumptions, evidence)
    if side.side is Side.OMEGA_DEFINITE:
        return RankCertificate(Verdict.REAL_RANK_GE, n + 1, None, assumptions, evidence)
    evidence["reason"] = "antipolar is semidefinite with a real zero; no rank claim"
    return RankCertificate(Verdict.INCONCLUSIVE, None, None, assumptions, evidence)


# -- sampler --------------------------------------------------------------------------------

def random_biform(d: int, rng, low=COEFFICIENT_RANGE[0], high=COEFFICIENT_RANGE[1],
                  ring: Ring = None) -> GradedForm:
    """Form of bidegree ``(2, 2d)`` with independent uniform integer coefficients."""
    ring = ring or Ring.p1p1()
    monos = ring.monomials((2, 2 * d))
    coeffs = rng.integers(low, high + 1, size=len(monos))
    return GradedForm(ring, {m: int(c) for m, c in zip(monos, coeffs)}, (2, 2 * d))


def _sample_rng(seed: int, index: int):
    return np.random.default_rng([int(seed) % 2 ** 64, int(index)])


def _classify(d: int, seed: int, index: int):
    f = random_biform(d, _sample_rng(seed, index))
    sig = signature(phi_symmetric(f, (1, d)))
    try:
        cert = rank_certify(f)
    except SingularCatalecticantError:
        return sig.key(), "SINGULAR", None
    side = None
    if sig.as_tuple() == (2 * d + 1, 1, 0):
        side = cert.evidence["boundary_side"]["side"]
    return sig.key(), cert.label, side


def _classify_chunk(d, seed, indices):
    sigs, verdicts, sides = Counter(), Counter(), Counter()
    for i in indices:
        s, v, side = _classify(d, seed, i)
        sigs[s] += 1
        verdicts[v] += 1
        if side is not None:
            sides[side] += 1
    return sigs, verdicts, sides


def typical_rank_sample(d: int, n_samples: int, seed: int, n_jobs: int = 1) -> dict:
    """Empirical distribution of signatures and certificate verdicts.

    Sample ``i`` draws its coefficients from a generator seeded by
    ``(seed, i)``, so the record does not depend on how samples are split
    across workers.

    Parameters
    ----------
    d : int
        Forms have bidegree ``(2, 2d)``.
    n_samples : int
    seed : int
    n_jobs : int, optional
        Worker processes (joblib); ``1`` runs serially.

    Returns
    -------
    dict
        Seeds, coefficient range, signature counts (keys ``"p,m,z"``),
        verdict counts, boundary-side counts among signature ``(2d+1, 1)``
        samples and their fractions as ``"p/q"`` strings.
    """
    if d < 1:
        raise DimensionError(f"d must be positive, got {d}")
    if n_samples <= 0:
        raise EmptyStatisticsError("n_samples must be positive")
    idx = list(range(n_samples))
    if n_jobs == 1:
        parts = [_classify_chunk(d, seed, idx)]
    else:
        workers = n_jobs if n_jobs > 0 else 4
        chunks = [idx[k::workers] for k in range(workers)]
        parts = Parallel(n_jobs=n_jobs)(delayed(_classify_chunk)(d, seed, c) for c in chunks if c)
    sigs, verdicts, sides = Counter(), Counter(), Counter()
    for s, v, sd in parts:
        sigs.update(s)
        verdicts.update(v)
        sides.update(sd)
    n_mixed = sum(sides.values())
    fractions = {k: rational_str(Fraction(v, n_mixed)) for k, v in sorted(sides.items())}
    return {
        "d": d,
        "n_samples": n_samples,
        "seed": int(seed),
        "coefficient_range": list(COEFFICIENT_RANGE),
        "distribution": "independent uniform integers",
        "signature_counts": dict(sorted(sigs.items())),
        "verdict_counts": dict(sorted(verdicts.items())),
        "mixed_signature": f"{2 * d + 1},1,0",
        "mixed_signature_count": n_mixed,
        "side_counts": dict(sorted(sides.items())),
        "side_fractions": fractions,
    }
