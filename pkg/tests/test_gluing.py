import math
import random
from fractions import Fraction

import pytest

from hybridcensus.gluing import (
    CyclicWord,
    brute_force_class_count,
    canonical_rotation,
    dihedral_stabilizer,
    enumerate_classes,
    isometry_upper_bound,
    multinomial_lower_bound,
    necklace_count,
    primitive_root,
    same_class,
    same_primitive_class,
)


def naive_min_rotation(letters):
    doubled = letters + letters
    n = len(letters)
    return min(doubled[s : s + n] for s in range(n))


def random_word(rng, max_len=12, max_r=3):
    r = rng.randrange(1, max_r + 1)
    m = rng.randrange(1, max_len + 1)
    return CyclicWord(tuple(rng.randrange(1, r + 1) for _ in range(m)), r)


class TestCyclicWord:
    def test_parse(self):
        w = CyclicWord.parse("2,1,1")
        assert w.letters == (2, 1, 1) and w.r == 2 and w.m == 3

    def test_parse_explicit_alphabet(self):
        assert CyclicWord.parse("1,1", 3).r == 3

    def test_parse_malformed(self):
        for text in ("", "1,,2", "a,b", "1;2"):
            with pytest.raises(ValueError):
                CyclicWord.parse(text)

    def test_letter_out_of_range(self):
        with pytest.raises(ValueError):
            CyclicWord((0, 1), 2)
        with pytest.raises(ValueError):
            CyclicWord((3,), 2)

    def test_rotate(self):
        w = CyclicWord((1, 2, 3), 3)
        assert w.rotate(1).letters == (2, 3, 1)
        assert w.rotate(3) == w
        assert w.rotate(-1).letters == (3, 1, 2)


class TestCanonicalRotation:
    def test_examples(self):
        canon, shift = canonical_rotation(CyclicWord((2, 1, 1), 2))
        assert canon.letters == (1, 1, 2) and shift == 1
        canon, shift = canonical_rotation(CyclicWord((1, 2, 1, 2), 2))
        assert canon.letters == (1, 2, 1, 2) and shift == 0

    def test_idempotent(self):
        rng = random.Random(21)
        for _ in range(200):
            w = random_word(rng)
            canon, _ = canonical_rotation(w)
            again, shift = canonical_rotation(canon)
            assert again == canon and shift == 0

    def test_matches_naive_minimum(self):
        rng = random.Random(22)
        for _ in range(500):
            w = random_word(rng)
            canon, shift = canonical_rotation(w)
            assert canon.letters == naive_min_rotation(w.letters)
            assert w.rotate(shift) == canon

    def test_rotation_invariance(self):
        rng = random.Random(23)
        for _ in range(200):
            w = random_word(rng)
            k = rng.randrange(w.m)
            assert canonical_rotation(w.rotate(k))[0] == canonical_rotation(w)[0]


class TestSameClass:
    def test_shift_witness(self):
        ok, p = same_class(CyclicWord((1, 2, 2, 1), 2), CyclicWord((1, 1, 2, 2), 2))
        assert ok and p == 3

    def test_distinct_necklaces(self):
        ok, p = same_class(CyclicWord((1, 1, 2, 2), 2), CyclicWord((1, 2, 1, 2), 2))
        assert not ok and p is None

    def test_constant_words(self):
        ok, p = same_class(CyclicWord((2, 2, 2), 2), CyclicWord((2, 2, 2), 2))
        assert ok and p == 0
        ok, _ = same_class(CyclicWord((1, 1, 1), 2), CyclicWord((2, 2, 2), 2))
        assert not ok

    def test_length_mismatch_is_error(self):
        with pytest.raises(ValueError, match="length"):
            same_class(CyclicWord((1, 2), 2), CyclicWord((1, 2, 1), 2))

    def test_alphabet_mismatch_is_error(self):
        with pytest.raises(ValueError, match="alphabet"):
            same_class(CyclicWord((1, 2), 2), CyclicWord((1, 2), 3))

    def test_witness_is_valid_and_smallest(self):
        rng = random.Random(24)
        for _ in range(300):
            w = random_word(rng)
            k = rng.randrange(w.m)
            other = w.rotate(k)
            ok, p = same_class(w, other)
            assert ok
            assert w.rotate(p) == other
            assert all(w.rotate(q) != other for q in range(p))

    def test_equivalence_laws(self):
        rng = random.Random(25)
        for _ in range(1000):
            a = random_word(rng, max_len=8)
            b = a.rotate(rng.randrange(a.m)) if rng.random() < 0.7 else random_word(
                rng, max_len=8
            )
            if b.m != a.m or b.r != a.r:
                continue
            c = b.rotate(rng.randrange(b.m)) if rng.random() < 0.7 else random_word(
                rng, max_len=8
            )
            if c.m != a.m or c.r != a.r:
                continue
            ok_aa, p_aa = same_class(a, a)
            assert ok_aa and p_aa == 0
            ok_ab, p_ab = same_class(a, b)
            ok_ba, p_ba = same_class(b, a)
            assert ok_ab == ok_ba
            if ok_ab:
                assert a.rotate(p_ab) == b and b.rotate(p_ba) == a
            ok_bc, _ = same_class(b, c)
            ok_ac, _ = same_class(a, c)
            if ok_ab and ok_bc:
                assert ok_ac


class TestPrimitiveRoot:
    def test_examples(self):
        assert primitive_root(CyclicWord((1, 2, 1, 2), 2)).letters == (1, 2)
        assert primitive_root(CyclicWord((1, 2, 2), 2)).letters == (1, 2, 2)
        assert primitive_root(CyclicWord((1, 1, 1), 1)).letters == (1,)

    def test_root_reconstructs_word(self):
        rng = random.Random(26)
        for _ in range(200):
            w = random_word(rng)
            g = primitive_root(w)
            assert w.m % g.m == 0
            assert g.letters * (w.m // g.m) == w.letters

    def test_cross_length_comparator(self):
        g = CyclicWord((1, 2, 2), 2)
        doubled = CyclicWord((1, 2, 2, 1, 2, 2), 2)
        assert same_primitive_class(g, doubled)
        assert same_primitive_class(doubled.rotate(2), g)
        assert not same_primitive_class(g, CyclicWord((1, 2), 2))


class TestDihedralStabilizer:
    def test_constant_word(self):
        rep = dihedral_stabilizer(CyclicWord((1, 1, 1), 1))
        assert rep.rotation_order == 3 and rep.reflection_exists
        assert rep.dihedral_order == 6

    def test_single_special_piece(self):
        rep = dihedral_stabilizer(CyclicWord((2, 1, 1), 2))
        assert rep.rotation_order == 1 and rep.reflection_exists
        assert rep.dihedral_order == 2

    def test_alternating_word(self):
        rep = dihedral_stabilizer(CyclicWord((1, 2, 1, 2), 2))
        assert rep.rotation_order == 2 and rep.reflection_exists
        assert rep.dihedral_order == 4

    def test_chiral_word(self):
        rep = dihedral_stabilizer(CyclicWord((1, 1, 2, 1, 2, 2), 2))
        assert rep.rotation_order == 1 and not rep.reflection_exists
        assert rep.dihedral_order == 1

    def test_order_matches_symmetry_enumeration(self):
        rng = random.Random(27)
        for _ in range(200):
            w = random_word(rng, max_len=10)
            m, letters = w.m, w.letters
            preserved = 0
            for s in range(m):
                if all(letters[(i + s) % m] == letters[i] for i in range(m)):
                    preserved += 1
            for t in range(m):
                if all(letters[(t - i) % m] == letters[i] for i in range(m)):
                    preserved += 1
            # counting maps with multiplicity: m rotations plus m reflections
            assert dihedral_stabilizer(w).dihedral_order == preserved

    def test_dihedral_order_divides_2m(self):
        rng = random.Random(28)
        for _ in range(200):
            w = random_word(rng)
            rep = dihedral_stabilizer(w)
            assert 2 * w.m % rep.dihedral_order == 0
            assert w.m % rep.rotation_order == 0


class TestIsometryBound:
    def test_single_special_piece_sequence(self):
        for k in range(1, 20):
            w = CyclicWord((2,) + (1,) * k, 2)
            assert isometry_upper_bound(w, 17) == 2 * 17

    def test_constant_word(self):
        for m in (1, 2, 5, 8):
            w = CyclicWord((1,) * m, 1)
            assert isometry_upper_bound(w, 3) == 2 * m * 3

    def test_chiral_aperiodic_word(self):
        w = CyclicWord((1, 1, 2, 1, 2, 2), 2)
        assert isometry_upper_bound(w, 11) == 11

    def test_invalid_piece_bound(self):
        with pytest.raises(ValueError):
            isometry_upper_bound(CyclicWord((1,), 1), 0)


class TestNecklaceCount:
    def test_examples(self):
        assert necklace_count(2, 1) == 1
        assert necklace_count(2, 2) == 2  # {1122}, {1212}
        assert necklace_count(2, 3) == 4  # 111222, 112122, 112212, 121212
        assert necklace_count(3, 1) == 2  # {123}, {132}
        assert necklace_count(1, 5) == 1

    def test_matches_brute_force(self):
        for r in (1, 2, 3):
            for m in range(1, 13):
                if r * m > 12:
                    break
                assert necklace_count(r, m) == brute_force_class_count(r, m)

    def test_multinomial_bound(self):
        for r in (2, 3):
            for m in range(1, 16):
                bound = multinomial_lower_bound(r, m)
                assert bound == Fraction(
                    math.factorial(r * m), math.factorial(m) ** r * r * m
                )
                assert necklace_count(r, m) >= bound

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            necklace_count(0, 3)
        with pytest.raises(ValueError):
            necklace_count(2, 0)


class TestEnumerateClasses:
    def test_small_case(self):
        reps = enumerate_classes(2, 2)
        assert [w.letters for w in reps] == [(1, 1, 2, 2), (1, 2, 1, 2)]

    def test_counts_match_formula(self):
        for r, m in ((1, 6), (2, 2), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)):
            assert len(enumerate_classes(r, m, cap=24)) == necklace_count(r, m)

    def test_representatives_are_canonical(self):
        for w in enumerate_classes(3, 3):
            canon, shift = canonical_rotation(w)
            assert canon == w and shift == 0

    def test_cap_enforced(self):
        with pytest.raises(ValueError, match="cap"):
            enumerate_classes(3, 7)
        with pytest.raises(ValueError, match="cap"):
            enumerate_classes(2, 3, cap=5)
        assert len(enumerate_classes(2, 3, cap=6)) == 4

    def test_full_default_cap(self):
        # rm = 20 is the documented working scale for enumeration
        assert len(enumerate_classes(2, 10)) == necklace_count(2, 10) == 9252

    def test_orbit_stabilizer_accounting(self):
        # orbit sizes rm / rotation_order over all classes sum to the word count
        for r, m in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3)):
            total = sum(
                r * m // dihedral_stabilizer(w).rotation_order
                for w in enumerate_classes(r, m)
            )
            assert total == math.factorial(r * m) // math.factorial(m) ** r
