import pytest

from kkrcrystal import (
    AffineFactor,
    NormalOrderError,
    ResidueError,
    RiggedConfiguration,
    ScatteringData,
    Tableau,
    TensorWord,
    build_c,
    compose_theorem,
    is_normal_ordered,
    kkr_forward,
    kkr_scattering_all,
    modes_from_riggings,
    normal_order,
    normal_ordered_set,
    orbit,
    phi,
    prop43_isomorphism_check,
    restrict,
)


def sd(text, n, level=None):
    return ScatteringData.parse(text, n, level)


class TestSerialization:
    def test_parse_roundtrip(self):
        s = sd("222[4]*2233[5]*4[5]", 4, 1)
        assert str(s) == "222[4]*2233[5]*4[5]"
        assert s.level == 1
        assert s.modes() == (4, 5, 5)

    def test_level_inference(self):
        assert sd("3[1]", 3).level == 2

    def test_rejects_low_letters(self):
        with pytest.raises(ValueError):
            ScatteringData(2, 3, (AffineFactor(Tableau.from_word("2", 3), 0),))


class TestModes:
    def test_example38_level2(self):
        s = modes_from_riggings(TensorWord.from_word("3", 3), [0], 2)
        assert str(s) == "3[1]"

    def test_example38_level1(self):
        s = modes_from_riggings(TensorWord.from_word("22*3", 3), [0, 0], 1)
        assert str(s) == "22[2]*3[1]"

    def test_single_pure_factor(self):
        s = modes_from_riggings(TensorWord.from_word("222", 3), [5], 1)
        assert s.modes() == (5 + 3,)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            modes_from_riggings(TensorWord.from_word("22", 3), [0, 0], 1)

    def test_empty_path(self):
        s = modes_from_riggings(TensorWord((), 3), [], 1)
        assert s.factors == ()


class TestOrbitAndNormalOrder:
    def test_example38_orbit(self):
        s = sd("22[2]*3[1]", 3, 1)
        assert {str(t) for t in orbit(s)} == {"22[2]*3[1]", "2[1]*23[2]"}

    def test_singleton_orbit(self):
        s = sd("234[0]", 4, 1)
        assert orbit(s) == frozenset({s})

    def test_example38_normal_order(self):
        assert str(normal_order(sd("22[2]*3[1]", 3, 1))) == "2[1]*23[2]"

    def test_already_normal_singleton(self):
        s = sd("33[4]", 3, 1)
        assert normal_order(s) == s

    def test_ex46_s_set_is_normal_ordered_class(self, ex46):
        kkr_outputs = {s for s, _ in kkr_scattering_all(ex46, 1)}
        s1 = set(normal_ordered_set(next(iter(kkr_outputs))))
        assert kkr_outputs <= s1
        assert len({s.modes() for s in s1}) == 1

    def test_gap_criterion(self):
        assert is_normal_ordered(sd("2[1]*23[2]", 3, 1))
        assert is_normal_ordered(sd("222[4]*2233[5]*4[5]", 4, 1))
        assert not is_normal_ordered(sd("22[2]*3[1]", 3, 1))

    def test_normal_order_output_satisfies_gaps(self, ex25, ex46):
        for rc in (ex25, ex46):
            for a in range(1, rc.n):
                if not rc.layers[a - 1]:
                    continue
                path = kkr_forward(restrict(rc, a))[0].shift(a, rc.n)
                riggings = [r for _, r in rc.layers[a - 1]]
                s = modes_from_riggings(path, riggings, a)
                assert is_normal_ordered(normal_order(s))


class TestBuildC:
    def test_example38(self):
        assert str(build_c(sd("2[1]*23[2]", 3, 1))) == "1*2*1*23"

    def test_level2(self):
        assert str(build_c(sd("3[1]", 3, 2))) == "2*3"

    def test_zero_modes_insert_nothing(self):
        assert str(build_c(sd("2[0]*23[0]", 3, 1))) == "2*23"

    def test_rejects_decreasing_modes(self):
        with pytest.raises(NormalOrderError):
            build_c(sd("22[2]*3[1]", 3, 1))


class TestPhi:
    def test_example38_level2_shape21(self):
        assert str(phi(sd("3[1]", 3, 2), (2, 1))) == "22*3"

    def test_remark39_shape12(self):
        assert str(phi(sd("3[1]", 3, 2), (1, 2))) == "2*23"

    def test_example38_level1(self):
        assert str(phi(sd("2[1]*23[2]", 3, 1), (1, 1, 2, 1))) == "1*2*13*2"

    def test_residue_violation_detected(self):
        # a target shape that cannot absorb the factor leaks letter 2
        with pytest.raises(ResidueError):
            phi(sd("23[0]", 3, 1), (1,))


class TestCompose:
    def test_ex25(self, ex25):
        assert str(compose_theorem(ex25)) == "1*2*13*2"

    def test_all_empty_layers(self):
        rc = RiggedConfiguration(3, (2, 1), ((), ()))
        assert str(compose_theorem(rc)) == "11*1"

    def test_ex46(self, ex46):
        assert compose_theorem(ex46) == kkr_forward(ex46)[0]

    def test_choice_independence_ex46(self, ex46):
        expected = kkr_forward(ex46)[0]
        sizes = {}

        def probe(a, s1):
            sizes[a] = len(s1)
            return s1[0]

        compose_theorem(ex46, pick=probe)
        for a, size in sizes.items():
            for idx in range(size):
                def pick(level, s1, a=a, idx=idx):
                    return s1[idx if level == a else 0]

                assert compose_theorem(ex46, pick=pick) == expected


class TestProp43:
    def test_ex46_all_levels(self, ex46):
        for a in range(1, 4):
            assert prop43_isomorphism_check(ex46, a)

    def test_ex25(self, ex25):
        assert prop43_isomorphism_check(ex25, 1)
        assert prop43_isomorphism_check(ex25, 2)

    def test_empty_layer_degenerate(self):
        rc = RiggedConfiguration(3, (2, 1), ((), ()))
        assert prop43_isomorphism_check(rc, 1)
