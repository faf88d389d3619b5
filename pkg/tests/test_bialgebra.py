import unittest
import sys
from pathlib import Path

from hypothesis import assume, given, settings, strategies as st

# Agregar el directorio raíz al path para imports
sys.path.append(str(Path(__file__).parent.parent))

from core.bialgebra import (CrossingVerdict, Direction, Ray, Site, StringBialgebra,
                            cojacobi_defect, crossing_sign, drinfeld_defect, e_operator, end_order,
                            goldman_bracket, jacobi_defect, ray_compare, turaev_cobracket)
from core.combinations import Combo, TensorCombo
from core.errors import AlphabetMismatchError, EqualRaysError
from core.surface import preset_by_name
from core.words import CyclicWord

TORUS = preset_by_name("torus1")
PANTS = preset_by_name("pants")


def w(text):
    return CyclicWord.parse(text)


def c(text, coeff=1):
    return Combo.from_word(w(text), coeff)


@st.composite
def cyclic_words(draw, rank=2, max_size=6):
    element = st.integers(-rank, rank).filter(lambda x: x != 0)
    letters = draw(st.lists(element, min_size=1, max_size=max_size))
    word = CyclicWord.from_letters(letters)
    if word.is_trivial:
        word = CyclicWord((1,))
    return word


@st.composite
def rays(draw, rank=2, max_size=5):
    word = draw(cyclic_words(rank, max_size))
    position = draw(st.integers(1, len(word)))
    direction = draw(st.sampled_from(list(Direction)))
    return Ray(Site(word, position), direction)


class TestRays(unittest.TestCase):
    """Pruebas de rayos y del orden de los extremos"""

    def test_ray_letters(self):
        site = Site(w("abAb"), 1)
        forward = Ray(site, Direction.FORWARD)
        backward = Ray(Site(w("abAb"), 4), Direction.BACKWARD)
        self.assertEqual([forward.letter(k) for k in range(1, 6)], [1, 2, -1, 2, 1])
        self.assertEqual([backward.letter(k) for k in range(1, 4)], [1, -2, -1])

    def test_ray_compare_divergence(self):
        result = ray_compare(Ray(Site(w("abAb"), 1), Direction.FORWARD),
                             Ray(Site(w("abAb"), 4), Direction.BACKWARD))
        self.assertFalse(result.equal)
        self.assertEqual(result.depth, 2)
        self.assertEqual((result.dart1, result.dart2, result.incoming), (2, -2, -1))

    def test_ray_compare_equal_powers(self):
        result = ray_compare(Ray(Site(w("aa"), 1), Direction.FORWARD),
                             Ray(Site(w("a"), 1), Direction.FORWARD))
        self.assertTrue(result.equal)

    def test_ray_compare_alphabet(self):
        with self.assertRaises(AlphabetMismatchError):
            ray_compare(Ray(Site(w("c"), 1), Direction.FORWARD),
                        Ray(Site(w("a"), 1), Direction.FORWARD), TORUS)

    def test_site_range(self):
        with self.assertRaises(ValueError):
            Site(w("ab"), 3)
        with self.assertRaises(ValueError):
            Site(w(""), 1)

    def test_end_order(self):
        wa = Ray(Site(w("a"), 1), Direction.FORWARD)
        va = Ray(Site(w("a"), 1), Direction.BACKWARD)
        wb = Ray(Site(w("b"), 1), Direction.FORWARD)
        self.assertEqual(end_order(wa, wb, va, TORUS), 1)
        self.assertEqual(end_order(wb, wa, va, TORUS), -1)
        self.assertEqual(end_order(wa, wb, va, PANTS), -1)

    def test_end_order_shared_prefix(self):
        # W(ab) y W(aB) comparten la primera letra; V(a) sale por el dardo entrante
        w_ab = Ray(Site(w("ab"), 1), Direction.FORWARD)
        w_aB = Ray(Site(w("aB"), 1), Direction.FORWARD)
        va = Ray(Site(w("a"), 1), Direction.BACKWARD)
        # en el vértice tras a: dardos b, B y el entrante A
        self.assertEqual(end_order(w_ab, w_aB, va, TORUS), TORUS.cyclic_orientation(2, -2, -1))

    @settings(max_examples=60, deadline=None)
    @given(rays(), rays(), rays(), st.sampled_from([TORUS, PANTS]))
    def test_end_order_alternating(self, r1, r2, r3, rose):
        for first, second in ((r1, r2), (r1, r3), (r2, r3)):
            assume(not ray_compare(first, second).equal)
        sign = end_order(r1, r2, r3, rose)
        self.assertIn(sign, (1, -1))
        # rotación
        self.assertEqual(end_order(r2, r3, r1, rose), sign)
        self.assertEqual(end_order(r3, r1, r2, rose), sign)
        # cada trasposición cambia el signo
        self.assertEqual(end_order(r2, r1, r3, rose), -sign)
        self.assertEqual(end_order(r1, r3, r2, rose), -sign)
        self.assertEqual(end_order(r3, r2, r1, rose), -sign)

    def test_end_order_equal_rays(self):
        ray = Ray(Site(w("ab"), 1), Direction.FORWARD)
        other = Ray(Site(w("abab"), 3), Direction.FORWARD)
        with self.assertRaises(EqualRaysError):
            end_order(ray, other, Ray(Site(w("a"), 1), Direction.BACKWARD), TORUS)


class TestCrossings(unittest.TestCase):
    """Pruebas del veredicto de cruce"""

    def test_torus_generators_cross(self):
        self.assertEqual(crossing_sign(w("a"), 1, w("b"), 1, TORUS), CrossingVerdict.POSITIVE)
        self.assertEqual(crossing_sign(w("b"), 1, w("a"), 1, TORUS), CrossingVerdict.NEGATIVE)

    def test_pants_generators_disjoint(self):
        self.assertEqual(crossing_sign(w("a"), 1, w("b"), 1, PANTS), CrossingVerdict.NONE)

    def test_parallel_strands(self):
        self.assertEqual(crossing_sign(w("a"), 1, w("a"), 1, TORUS), CrossingVerdict.NONE)
        self.assertEqual(crossing_sign(w("a"), 1, w("A"), 1, TORUS), CrossingVerdict.NONE)

    def test_self_pair_excludes_same_site(self):
        self.assertEqual(crossing_sign(w("aB"), 1, w("aB"), 1, PANTS, self_pair=True),
                         CrossingVerdict.NONE)
        self.assertEqual(crossing_sign(w("aB"), 1, w("aB"), 2, PANTS, self_pair=True),
                         CrossingVerdict.NEGATIVE)

    def test_self_pair_verdicts_torus(self):
        word = w("abAb")
        verdicts = {(i, j): crossing_sign(word, i, word, j, TORUS, self_pair=True)
                    for i in range(1, 5) for j in range(1, 5) if i != j}
        nonzero = {pair: int(v) for pair, v in verdicts.items() if v}
        self.assertEqual(nonzero, {(1, 4): 1, (3, 2): -1})
        self.assertEqual(verdicts[(1, 3)], CrossingVerdict.NONE)

    def test_crossing_counted_from_entering_side(self):
        # cada cruce del árbol se registra una sola vez, desde el par donde entra alpha
        word = w("abAb")
        self.assertEqual(crossing_sign(word, 1, word, 4, TORUS, self_pair=True),
                         CrossingVerdict.POSITIVE)
        self.assertEqual(crossing_sign(word, 4, word, 1, TORUS, self_pair=True),
                         CrossingVerdict.NONE)
        self.assertTrue(turaev_cobracket(c("abAb"), TORUS).is_zero)


class TestBracket(unittest.TestCase):
    """Pruebas del corchete de Goldman"""

    def test_normalization(self):
        self.assertEqual(goldman_bracket(c("a"), c("b"), TORUS), c("ab"))
        self.assertEqual(goldman_bracket(c("b"), c("a"), TORUS), c("ab", -1))

    def test_parallel_powers_zero(self):
        for x, y in (("a", "aa"), ("ab", "abab"), ("a", "A")):
            with self.subTest(x=x, y=y):
                self.assertTrue(goldman_bracket(c(x), c(y), TORUS).is_zero)

    def test_shared_segment_counted_once(self):
        self.assertEqual(goldman_bracket(c("a"), c("ab"), TORUS), c("aab"))
        self.assertEqual(goldman_bracket(c("ab"), c("a"), TORUS), c("aab", -1))

    def test_pants_zero(self):
        self.assertTrue(goldman_bracket(c("a"), c("b"), PANTS).is_zero)

    def test_self_bracket_zero(self):
        self.assertTrue(goldman_bracket(c("a"), c("a"), TORUS).is_zero)
        self.assertTrue(goldman_bracket(c("aab"), c("aab"), TORUS).is_zero)

    def test_bilinearity(self):
        algebra = StringBialgebra(TORUS)
        x = c("a", 2) + c("b")
        y = c("b", -1)
        expected = algebra.bracket(c("a"), c("b")) * -2 + algebra.bracket(c("b"), c("b")) * -1
        self.assertEqual(algebra.bracket(x, y), expected)

    def test_alphabet_mismatch(self):
        with self.assertRaises(AlphabetMismatchError):
            goldman_bracket(c("a"), c("c"), TORUS)

    def test_memoized_values_reused(self):
        algebra = StringBialgebra(TORUS)
        first = algebra.word_bracket(w("ab"), w("aB"))
        self.assertIs(algebra.word_bracket(w("ab"), w("aB")), first)
        algebra.clear_cache()
        self.assertEqual(algebra.word_bracket(w("ab"), w("aB")), first)

    @settings(max_examples=40, deadline=None)
    @given(cyclic_words(), cyclic_words())
    def test_antisymmetry(self, x, y):
        algebra = StringBialgebra(TORUS)
        self.assertTrue(algebra.antisymmetry_defect(Combo.from_word(x), Combo.from_word(y)).is_zero)

    @settings(max_examples=25, deadline=None)
    @given(cyclic_words(max_size=4), cyclic_words(max_size=4), cyclic_words(max_size=4))
    def test_jacobi(self, x, y, z):
        defect = jacobi_defect(Combo.from_word(x), Combo.from_word(y), Combo.from_word(z), TORUS)
        self.assertTrue(defect.is_zero)

    @settings(max_examples=30, deadline=None)
    @given(cyclic_words(max_size=5), st.integers(1, 4))
    def test_conjugacy_invariance(self, x, k):
        algebra = StringBialgebra(PANTS)
        rotated = CyclicWord(x.rotation(k))
        y = w("aB")
        self.assertEqual(algebra.word_bracket(rotated, y), algebra.word_bracket(x, y))
        self.assertEqual(algebra.word_cobracket(rotated), algebra.word_cobracket(x))


class TestCobracket(unittest.TestCase):
    """Pruebas del co-corchete de Turaev y de los defectos"""

    def test_simple_classes_vanish(self):
        self.assertTrue(turaev_cobracket(c("a"), TORUS).is_zero)
        self.assertTrue(turaev_cobracket(c("ab"), PANTS).is_zero)

    def test_torus_cancellation(self):
        self.assertTrue(turaev_cobracket(c("abAb"), TORUS).is_zero)
        self.assertTrue(turaev_cobracket(c("aab"), TORUS).is_zero)

    def test_figure_eight_on_pants(self):
        value = turaev_cobracket(c("aB"), PANTS)
        expected = TensorCombo(2, {(w("a"), w("B")): -1, (w("B"), w("a")): 1})
        self.assertEqual(value, expected)
        self.assertTrue(StringBialgebra(PANTS).coantisymmetry_defect(c("aB")).is_zero)

    def test_involutive_on_figure_eight(self):
        self.assertTrue(e_operator(c("aB"), PANTS).is_zero)

    def test_tensor_actions(self):
        algebra = StringBialgebra(TORUS)
        t = TensorCombo(2, {(w("a"), w("a")): 1})
        right = algebra.bracket_tensor_right(t, c("b"))
        left = algebra.bracket_tensor_left(c("b"), t)
        expected = TensorCombo(2, {(w("ab"), w("a")): 1, (w("a"), w("ab")): 1})
        self.assertEqual(right, expected)
        self.assertEqual(left, -expected)
        with self.assertRaises(ValueError):
            algebra.bracket_tensor_right(TensorCombo(3), c("b"))

    @settings(max_examples=25, deadline=None)
    @given(cyclic_words(max_size=6))
    def test_cojacobi_and_involutive(self, x):
        self.assertTrue(cojacobi_defect(Combo.from_word(x), PANTS).is_zero)
        self.assertTrue(e_operator(Combo.from_word(x), TORUS).is_zero)

    @settings(max_examples=20, deadline=None)
    @given(cyclic_words(max_size=4), cyclic_words(max_size=4))
    def test_drinfeld(self, x, y):
        self.assertTrue(drinfeld_defect(Combo.from_word(x), Combo.from_word(y), TORUS).is_zero)
        self.assertTrue(drinfeld_defect(Combo.from_word(x), Combo.from_word(y), PANTS).is_zero)


class AbsoluteCrossingAlgebra(StringBialgebra):
    """Variante defectuosa: ignora el signo del cruce"""

    def crossing(self, a, i0, b, j0):
        return abs(super().crossing(a, i0, b, j0))


class TestMutationDetected(unittest.TestCase):
    """Una regla de signo defectuosa debe romper las identidades"""

    def test_absolute_sign_breaks_antisymmetry(self):
        algebra = AbsoluteCrossingAlgebra(TORUS)
        defect = algebra.antisymmetry_defect(c("a"), c("b"))
        self.assertEqual(defect, c("ab", 2))


def run_all_tests():
    """Ejecuta todas las pruebas unitarias"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for case in (TestRays, TestCrossings, TestBracket, TestCobracket, TestMutationDetected):
        suite.addTests(loader.loadTestsFromTestCase(case))
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_all_tests()
    sys.exit(0 if success else 1)
