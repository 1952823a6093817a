import pytest

from kkrcrystal import (
    RiggedConfiguration,
    Tableau,
    TensorWord,
    ValidationError,
    apply_r_at,
    delta_q,
    is_highest,
    kkr_forward,
    kkr_forward_all_rule1_ties,
    kkr_scattering,
    kkr_scattering_all,
    mode_formula,
    restrict,
    with_quantum_order,
)


class TestForward:
    def test_ex25(self, ex25):
        path, trace = kkr_forward(ex25)
        assert str(path) == "1*2*13*2"
        assert [rem.row_id for rem in trace.removals] == [3, 2, 1, 0]
        assert trace.removals[0].letters == (2,)
        assert trace.removals[1].letters == (1, 3)

    def test_ex46(self, ex46):
        path, _ = kkr_forward(ex46)
        assert str(path) == "1*1*1*1*2*2*3*2*1*4*3*2*2"

    def test_trivial_all_empty(self):
        rc = RiggedConfiguration(3, (3,), ((), ()))
        path, _ = kkr_forward(rc)
        assert str(path) == "111"

    def test_rejects_invalid(self):
        bad = RiggedConfiguration(2, (1,), (((1, 1),),))
        with pytest.raises(ValidationError):
            kkr_forward(bad)

    def test_output_always_highest(self, ex62, ex63):
        for rc in (ex62, ex63):
            assert is_highest(kkr_forward(rc)[0])

    def test_trace_json(self, ex25):
        _, trace = kkr_forward(ex25)
        assert "row_id" in trace.to_json()


class TestModeFormula:
    def test_ex46_initial(self, ex46):
        assert mode_formula(ex46, 1) == (5, (0, 1, 2))

    def test_ex46_after_first_removal(self):
        state = RiggedConfiguration(
            4, (1,) * 5, (((4, 0), (3, 1)), ((2, 0),), ())
        )
        assert mode_formula(state, 1) == (5, (0, 1))

    def test_ex46_after_second_removal(self):
        state = RiggedConfiguration(4, (1,) * 5, (((3, 1),), (), ()))
        assert mode_formula(state, 1) == (4, (0,))

    def test_empty_layer(self, ex25):
        rc = RiggedConfiguration(3, (1,), ((), ()))
        with pytest.raises(ValueError):
            mode_formula(rc, 1)


class TestScattering:
    def test_ex46_all_choices(self, ex46):
        got = sorted({str(sd) for sd, _ in kkr_scattering_all(ex46, 1)})
        assert got == [
            "2222[4]*233[5]*4[5]",
            "2222[4]*3[5]*234[5]",
            "222[4]*2233[5]*4[5]",
            "222[4]*3[5]*2234[5]",
        ]

    def test_ex46_s1_choice_sequence(self, ex46):
        # rows of mu^(1) are stored as lengths (4, 3, 1); removing the length-1
        # row, then length-4, then length-3 yields s_1
        order = iter([2, 0, 1])

        def chooser(cands):
            want = next(order)
            return next(i for i, (orig, _, _) in enumerate(cands) if orig == want)

        sd, _ = kkr_scattering(ex46, 1, chooser=chooser)
        assert str(sd) == "222[4]*2233[5]*4[5]"

    def test_modes_weakly_increasing_display(self, ex46):
        sd, _ = kkr_scattering(ex46, 1)
        modes = sd.modes()
        assert list(modes) == sorted(modes)

    def test_single_row_top_level(self, ex46):
        sd, _ = kkr_scattering(ex46, 3)
        (factor,) = sd.factors
        assert factor.tableau == Tableau.from_word("4", 4)
        assert factor.mode == mode_formula(ex46, 3)[0]

    def test_empty_layer_gives_empty_data(self):
        rc = RiggedConfiguration(3, (2, 1), ((), ()))
        sd, trace = kkr_scattering(rc, 1)
        assert sd.factors == ()
        assert trace.removals == ()

    def test_first_mode_matches_formula(self, ex46, ex62):
        for rc in (ex46, ex62):
            for a in range(1, rc.n):
                if not rc.layers[a - 1]:
                    continue
                sd, _ = kkr_scattering(rc, a)
                assert sd.factors[-1].mode == mode_formula(rc, a)[0]


class TestDeltaQ:
    def test_ex62(self, ex62):
        path, trace = kkr_forward(ex62)
        assert str(path) == "1*2*1*1*1*222*333*1*244*1*2335"
        assert delta_q(trace, 2, 3, 0) == 2

    def test_ex63(self, ex63):
        path, trace = kkr_forward(ex63)
        assert str(path) == (
            "1*1*1*1*2222*1*1*1*2223*1*1*1*222334*1*233344"
            "*1*1*1*1*22223345*1*1*22333346"
        )
        assert delta_q(trace, 2, 8, 0) == 6

    def test_no_touch_means_zero(self, ex25):
        _, trace = kkr_forward(ex25)
        # first removal (letter 2) only removes a layer-1 box
        assert delta_q(trace, 2, 3, 0) == 0


class TestKss:
    def test_ex25_adjacent_swap(self, ex25):
        base, _ = kkr_forward(ex25)
        swapped, _ = kkr_forward(with_quantum_order(ex25, [0, 1, 3, 2]))
        assert swapped == apply_r_at(base, 2)

    def test_identical_rows_swap_identity(self, ex46):
        base, _ = kkr_forward(ex46)
        swapped, _ = kkr_forward(with_quantum_order(ex46, [1, 0] + list(range(2, 13))))
        assert swapped == base


class TestRule1Ties:
    @pytest.mark.parametrize(
        "rc_args",
        [
            (3, (1, 1, 2, 1), (((2, 0), (1, 0)), ((1, 0),))),
            (3, (1, 1, 1, 1), (((1, 0), (1, 0)), ((1, 0),))),
            (2, (1, 1, 1, 1), (((1, 0), (1, 0)),)),
        ],
    )
    def test_tie_choices_agree(self, rc_args):
        rc = RiggedConfiguration(*rc_args)
        assert len(kkr_forward_all_rule1_ties(rc)) == 1


class TestTheorem61Spot:
    def test_successive_pairs_on_ex46(self, ex46):
        from kkrcrystal import unwinding_number

        for sd, trace in kkr_scattering_all(ex46, 1):
            for j in range(len(sd.factors) - 1):
                left = sd.factors[j].tableau
                right = sd.factors[j + 1].tableau
                removal = trace.removal_at_display(j + 1)
                assert removal.delta_q(1, left.capacity) == unwinding_number(left, right)


class TestLemma52Spot:
    def test_rigging_bump_shifts_one_mode(self, ex46):
        # pin the removal order to (row 2, row 0, row 1); bumping row 2's
        # rigging keeps that order legal, so exactly its mode moves
        def make_chooser():
            order = iter([2, 0, 1])

            def chooser(cands):
                want = next(order)
                return next(i for i, (orig, _, _) in enumerate(cands) if orig == want)

            return chooser

        layers = (((4, 0), (3, 1), (1, 5)), ((2, 0), (1, 0)), ((1, 0),))
        bumped = RiggedConfiguration(4, ex46.quantum, layers)
        base_sd, base_trace = kkr_scattering(ex46, 1, chooser=make_chooser())
        new_sd, new_trace = kkr_scattering(bumped, 1, chooser=make_chooser())
        assert str(base_sd) == "222[4]*2233[5]*4[5]"
        assert [r.row_id for r in base_trace.removals] == [
            r.row_id for r in new_trace.removals
        ]
        for bf, nf, rem in zip(
            base_sd.factors, new_sd.factors, reversed(base_trace.removals)
        ):
            assert nf.mode == bf.mode + (1 if rem.row_id == 2 else 0)
