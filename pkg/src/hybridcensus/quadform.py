"""Diagonal quadratic forms over Q(sqrt(2)) and their local invariants.

Provides admissibility and anisotropy checks, Hilbert symbols and
Hasse-Witt invariants at split places, and machine-checkable
noncommensurability certificates for families of such forms: two
admissible forms give commensurable integer-point lattices only if the
forms are isometric up to a scalar, so a local invariant separating one
form from every scaling of the other is a witness of
noncommensurability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .exact_arith import (
    SQRT2,
    LocalPlace,
    LocalValue,
    Sqrt2Int,
    is_prime,
    legendre,
    primes_from,
    smallest_nonresidue,
    square_test_f,
    valuation_f,
)

__all__ = [
    "SQUARE_CLASSES",
    "DiagonalForm",
    "LocalInvariants",
    "NoncommCertificate",
    "certify_noncommensurable",
    "disc_class",
    "generate_family",
    "hasse_witt",
    "hilbert_symbol",
    "is_admissible",
    "is_anisotropic_certified",
    "local_invariants",
    "scaled_invariants",
    "signatures",
    "verify_certificate",
]

SQUARE_CLASSES = ("1", "u", "p", "up")


# ------------------------------------------------------------------- forms


@dataclass(frozen=True)
class DiagonalForm:
    """a_1 x_1^2 + ... + a_{n+1} x_{n+1}^2 with nonzero coefficients in Z[sqrt(2)]."""

    coeffs: tuple[Sqrt2Int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 3:
            raise ValueError("need at least 3 coefficients (hyperbolic dimension >= 2)")
        for c in coeffs:
            if not isinstance(c, Sqrt2Int):
                raise TypeError("coefficients must be Sqrt2Int")
            if not c:
                raise ValueError("zero coefficient makes the form degenerate")

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @classmethod
    def standard(cls, a: Union[Sqrt2Int, int], n: int) -> "DiagonalForm":
        """a x_1^2 + x_2^2 + ... + x_n^2 - sqrt(2) x_{n+1}^2."""
        if n < 2:
            raise ValueError("hyperbolic dimension n must be >= 2")
        lead = a if isinstance(a, Sqrt2Int) else Sqrt2Int(a)
        ones = tuple(Sqrt2Int(1) for _ in range(n - 1))
        return cls((lead,) + ones + (-SQRT2,))

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [c.to_json() for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "DiagonalForm":
        form = DiagonalForm(tuple(Sqrt2Int.from_json(c) for c in obj["coeffs"]))
        if form.n != int(obj["n"]):
            raise ValueError("form dimension does not match coefficient count")
        return form


# -------------------------------------------------------------- signatures


def _sign_at_embedding(c: Sqrt2Int, conjugate: bool) -> int:
    u, v = c.u, -c.v if conjugate else c.v
    if u >= 0 and v >= 0:
        return 1
    if u <= 0 and v <= 0:
        return -1
    d = u * u - 2 * v * v
    assert d != 0  # u^2 = 2 v^2 has no nonzero integer solutions
    if u > 0:
        return 1 if d > 0 else -1
    return 1 if d < 0 else -1


def signatures(q: DiagonalForm) -> tuple[int, int]:
    """Negative coefficient counts under the embeddings sqrt(2) -> +/- sqrt(2)."""
    neg_plus = sum(1 for c in q.coeffs if _sign_at_embedding(c, False) < 0)
    neg_minus = sum(1 for c in q.coeffs if _sign_at_embedding(c, True) < 0)
    return neg_plus, neg_minus


def is_admissible(q: DiagonalForm) -> bool:
    """Definite at one real embedding, signature (1, n) at the other."""
    return sorted(signatures(q)) == [0, 1]


def is_anisotropic_certified(q: DiagonalForm) -> bool:
    """True iff some real embedding makes q definite (sufficient for anisotropy)."""
    dim = q.dim
    return any(neg in (0, dim) for neg in signatures(q))


# --------------------------------------------------------- local invariants


@dataclass(frozen=True)
class LocalInvariants:
    """Isometry invariants of a form over Q_p: dimension, discriminant class, Hasse-Witt."""

    dim: int
    disc_val_parity: int
    disc_unit_qr: int
    hasse: int

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "disc_val_parity": self.disc_val_parity,
            "disc_unit_qr": self.disc_unit_qr,
            "hasse": self.hasse,
        }

    @staticmethod
    def from_json(obj: dict) -> "LocalInvariants":
        return LocalInvariants(
            int(obj["dim"]),
            int(obj["disc_val_parity"]),
            int(obj["disc_unit_qr"]),
            int(obj["hasse"]),
        )


def hilbert_symbol(
    a: LocalValue, b: LocalValue, place: Union[LocalPlace, int]
) -> int:
    """Hilbert symbol (a, b) over Q_p for odd p.

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_p.  For
    a = p^alpha u, b = p^beta w this is
    (-1)^(alpha beta (p-1)/2) * (u|p)^beta * (w|p)^alpha.
    """
    p = place.p if isinstance(place, LocalPlace) else place
    if p < 3 or p % 2 == 0:
        raise ValueError(f"hilbert_symbol needs an odd prime, got {p}")
    alpha, beta = a.val % 2, b.val % 2
    s = 1
    if alpha and beta and (p - 1) // 2 % 2:
        s = -s
    if beta:
        s *= legendre(a.unit, p, validate=False)
    if alpha:
        s *= legendre(b.unit, p, validate=False)
    return s


def _class_value(lam: str, place: LocalPlace) -> LocalValue:
    """Representative of a square class of Q_p^*: 1, u (smallest non-residue), p, up."""
    if lam not in SQUARE_CLASSES:
        raise ValueError(f"unknown square class {lam!r}, expected one of {SQUARE_CLASSES}")
    unit = smallest_nonresidue(place.p) if "u" in lam else 1
    return LocalValue(1 if "p" in lam else 0, unit)


def _invariants_with_table(
    q: DiagonalForm, place: LocalPlace, scale: Optional[LocalValue] = None
) -> tuple[LocalInvariants, list[LocalValue], list[tuple[int, int, int]]]:
    p = place.p
    local = [valuation_f(c, place) for c in q.coeffs]
    if scale is not None:
        local = [LocalValue(c.val + scale.val, c.unit * scale.unit % p) for c in local]
    symbols = []
    hasse = 1
    for i in range(len(local)):
        for j in range(i + 1, len(local)):
            s = hilbert_symbol(local[i], local[j], p)
            symbols.append((i, j, s))
            hasse *= s
    disc_val = sum(c.val for c in local)
    disc_unit = 1
    for c in local:
        disc_unit = disc_unit * c.unit % p
    inv = LocalInvariants(q.dim, disc_val % 2, legendre(disc_unit, p, validate=False), hasse)
    return inv, local, symbols


def local_invariants(
    q: DiagonalForm, place: LocalPlace, scale: Optional[LocalValue] = None
) -> LocalInvariants:
    """Invariants of q (or of lambda * q when scale is the class of lambda) over Q_p."""
    return _invariants_with_table(q, place, scale)[0]


def hasse_witt(q: DiagonalForm, place: LocalPlace) -> int:
    """Product of Hilbert symbols (a_i, a_j) over all coefficient pairs i < j."""
    return local_invariants(q, place).hasse


def disc_class(q: DiagonalForm, place: LocalPlace) -> tuple[int, int]:
    """Class of the product of coefficients in Q_p^*/(Q_p^*)^2: (valuation mod 2, Legendre of unit part)."""
    inv = local_invariants(q, place)
    return inv.disc_val_parity, inv.disc_unit_qr


def scaled_invariants(q: DiagonalForm, place: LocalPlace, lam: str) -> LocalInvariants:
    """Invariants of lambda * q for lambda in the square class "1", "u", "p" or "up"."""
    return local_invariants(q, place, _class_value(lam, place))


# ------------------------------------------------------------- certificates


@dataclass(frozen=True)
class NoncommCertificate:
    """Witness that two admissible forms are nonisometric after every scaling.

    kind "OddDiscWitness": the discriminant ratio of the two forms is not a
    square of the field, which no scaling can repair in even rank.
    kind "LocalWitness": at one place every square class of scalars leaves
    a mismatch in (discriminant class, Hasse-Witt) against the target form.
    """

    kind: str
    form: DiagonalForm
    other_form: DiagonalForm
    witness: dict
    swapped: Optional[dict] = None

    @property
    def n(self) -> int:
        return self.form.n

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "form": self.form.to_json(),
            "other_form": self.other_form.to_json(),
            "witness": self.witness,
            "swapped": self.swapped,
        }

    @staticmethod
    def from_json(obj: dict) -> "NoncommCertificate":
        cert = NoncommCertificate(
            kind=str(obj["kind"]),
            form=DiagonalForm.from_json(obj["form"]),
            other_form=DiagonalForm.from_json(obj["other_form"]),
            witness=dict(obj["witness"]),
            swapped=dict(obj["swapped"]) if obj.get("swapped") else None,
        )
        if cert.n != int(obj["n"]):
            raise ValueError("certificate n does not match the stored forms")
        return cert


def _disc_ratio_product(q: DiagonalForm, q2: DiagonalForm) -> Sqrt2Int:
    # disc(q) * disc(q2) represents disc(q)/disc(q2) modulo squares; when the
    # forms differ only in the leading coefficient the shared tail cancels.
    if q.coeffs[1:] == q2.coeffs[1:]:
        return q.coeffs[0] * q2.coeffs[0]
    prod = Sqrt2Int(1)
    for c in q.coeffs + q2.coeffs:
        prod = prod * c
    return prod


def _local_row(inv: LocalInvariants, target: LocalInvariants) -> list[str]:
    fields = ("dim", "disc_val_parity", "disc_unit_qr", "hasse")
    return [f for f in fields if getattr(inv, f) != getattr(target, f)]


def _symbols_json(local: list[LocalValue], symbols: list[tuple[int, int, int]]) -> dict:
    return {
        "coeffs_local": [{"val": c.val, "unit": c.unit} for c in local],
        "symbols": [{"i": i, "j": j, "symbol": s} for i, j, s in symbols],
    }


def _scan_local_witness(
    target: DiagonalForm, scaled: DiagonalForm, place_budget: int
) -> Optional[dict]:
    """First place p = 7 (mod 8), unimodular for the scaled form, where all four
    square classes of scalars mismatch the target's invariants."""
    norms = [c.norm() for c in scaled.coeffs]
    for p in primes_from(3):
        if p > place_budget:
            return None
        if p % 8 != 7 or any(n % p == 0 for n in norms):
            continue
        place = LocalPlace.at(p)
        tgt_inv, tgt_local, tgt_syms = _invariants_with_table(target, place)
        rows = []
        for lam in SQUARE_CLASSES:
            inv, local, syms = _invariants_with_table(scaled, place, _class_value(lam, place))
            mismatches = _local_row(inv, tgt_inv)
            if not mismatches:
                rows = None
                break
            row = {"lambda": lam, "invariants": inv.to_json(), "mismatches": mismatches}
            row.update(_symbols_json(local, syms))
            rows.append(row)
        if rows is not None:
            witness = {
                "p": place.p,
                "sqrt2_root": place.sqrt2_root,
                "target": dict(invariants=tgt_inv.to_json(), **_symbols_json(tgt_local, tgt_syms)),
                "rows": rows,
            }
            return witness
    return None


def certify_noncommensurable(
    q_a: DiagonalForm,
    q_a2: DiagonalForm,
    n: Optional[int] = None,
    place_budget: int = 1000,
) -> Optional[NoncommCertificate]:
    """Certificate that q_a and lambda * q_a2 are nonisometric for every scalar lambda.

    Odd n: the discriminant is a similarity invariant in even rank, so a
    non-square discriminant ratio is a witness.  Even n: scan places
    p = 7 (mod 8) at which the scaled form is unimodular and look for one
    where all four scalar square classes mismatch; the roles-swapped scan
    is run as well and recorded.  Returns None when no witness exists
    within the budget; that is absence of a certificate, not a proof of
    commensurability.
    """
    if q_a.dim != q_a2.dim:
        raise ValueError("forms must have the same dimension")
    if n is not None and n != q_a.n:
        raise ValueError(f"stated n = {n} does not match the forms (n = {q_a.n})")
    if not is_admissible(q_a) or not is_admissible(q_a2):
        raise ValueError("both forms must be admissible")
    n = q_a.n
    if n % 2 == 1:
        product = _disc_ratio_product(q_a, q_a2)
        is_sq, transcript = square_test_f(product)
        if is_sq:
            return None
        witness = {"ratio_product": product.to_json(), "square_test": transcript}
        return NoncommCertificate("OddDiscWitness", q_a, q_a2, witness)
    primary = _scan_local_witness(q_a, q_a2, place_budget)
    swapped = _scan_local_witness(q_a2, q_a, place_budget)
    if primary is not None:
        primary["direction"] = "forward"
        return NoncommCertificate("LocalWitness", q_a, q_a2, primary, swapped)
    if swapped is not None:
        # Only the swapped orientation separates; q ~ lambda q' iff q' ~ (1/lambda) q,
        # so it certifies the same conclusion.
        swapped["direction"] = "reverse"
        return NoncommCertificate("LocalWitness", q_a, q_a2, swapped)
    return None


def _verify_local_table(
    target: DiagonalForm, scaled: DiagonalForm, witness: dict
) -> bool:
    place = LocalPlace.at(int(witness["p"]))
    if place.p % 8 != 7 or place.sqrt2_root != int(witness["sqrt2_root"]):
        return False
    tgt_inv, tgt_local, tgt_syms = _invariants_with_table(target, place)
    if _symbols_json(tgt_local, tgt_syms) | {"invariants": tgt_inv.to_json()} != dict(
        witness["target"]
    ):
        return False
    rows = witness["rows"]
    if [row["lambda"] for row in rows] != list(SQUARE_CLASSES):
        return False
    for row in rows:
        inv, local, syms = _invariants_with_table(
            scaled, place, _class_value(row["lambda"], place)
        )
        expected = {"lambda": row["lambda"], "invariants": inv.to_json()}
        expected["mismatches"] = _local_row(inv, tgt_inv)
        expected.update(_symbols_json(local, syms))
        if not expected["mismatches"] or expected != dict(row):
            return False
    return True


def verify_certificate(cert: NoncommCertificate) -> bool:
    """Re-check a certificate from scratch, recomputing every symbol."""
    try:
        q, q2 = cert.form, cert.other_form
        if q.dim != q2.dim or not is_admissible(q) or not is_admissible(q2):
            return False
        if cert.kind == "OddDiscWitness":
            if q.n % 2 == 0:
                return False
            product = _disc_ratio_product(q, q2)
            if Sqrt2Int.from_json(cert.witness["ratio_product"]) != product:
                return False
            is_sq, transcript = square_test_f(product)
            return not is_sq and transcript == cert.witness["square_test"]
        if cert.kind == "LocalWitness":
            if q.n % 2 == 1:
                return False
            witness = dict(cert.witness)
            direction = witness.pop("direction", "forward")
            if direction == "forward":
                target, scaled = q, q2
            elif direction == "reverse":
                target, scaled = q2, q
            else:
                return False
            if not _verify_local_table(target, scaled, witness):
                return False
            if cert.swapped is not None:
                swapped = dict(cert.swapped)
                swapped.pop("direction", None)
                if not _verify_local_table(scaled, target, swapped):
                    return False
            return True
        return False
    except (KeyError, TypeError, ValueError):
        return False


# ------------------------------------------------------------------ family


def generate_family(n: int, count: int) -> list[DiagonalForm]:
    """First `count` pairwise-certifiable forms of hyperbolic dimension n.

    Even n: leading coefficients run over primes p = 7 (mod 8), where the
    local scan always separates.  Odd n: leading coefficients run over the
    rational primes, whose pairwise ratios are never squares in Q(sqrt(2));
    1 is excluded since 1/2 = (1/sqrt(2))^2 would collide with 2.
    """
    if n < 2:
        raise ValueError("hyperbolic dimension n must be >= 2")
    if count < 1:
        raise ValueError("count must be >= 1")
    leads: list[int] = []
    for p in primes_from(2):
        if n % 2 == 0 and p % 8 != 7:
            continue
        leads.append(p)
        if len(leads) == count:
            break
    forms = [DiagonalForm.standard(a, n) for a in leads]
    for i, f in enumerate(forms):
        assert is_admissible(f) and is_anisotropic_certified(f)
        for g in forms[:i]:
            ratio = f.coeffs[0] * g.coeffs[0]
            assert not square_test_f(ratio)[0], (f.coeffs[0], g.coeffs[0])
    return forms
