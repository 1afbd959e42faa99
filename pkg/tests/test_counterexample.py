import random

import pytest

from nilgrass.combinat import subset_rank
from nilgrass.counterexample import (AMBIENT_SUPPORTS, MISSING_COORDINATE,
                                     component_templates, in_ideal, instantiate,
                                     locus_context, module_type, observed_support,
                                     run_all_checks, sample_parameters,
                                     verify_component, verify_missing_linear_form)
from nilgrass.grassmann import plucker_vector
from nilgrass.linalg import mat_rank
from nilgrass.qq import QQ


@pytest.fixture(scope="module")
def templates():
    return {c.name: c for c in component_templates()}


class TestTemplates:
    def test_names(self, templates):
        assert set(templates) == {"segre_a", "segre_b", "nonreduced"}

    def test_zero_parameter_points(self, templates):
        # at zero parameters each template degenerates to a coordinate point
        expected = {"segre_a": (1, 2, 3, 4), "segre_b": (5, 6, 7, 8),
                    "nonreduced": (3, 4, 6, 8)}
        for name, coords in expected.items():
            vector = plucker_vector(instantiate(templates[name], {}))
            nonzero = [k for k, x in enumerate(vector) if x != 0]
            assert nonzero == [subset_rank(8, coords)]

    def test_constraint_violation_rejected(self, templates):
        with pytest.raises(ValueError):
            instantiate(templates["nonreduced"], {"a": QQ(1)})  # trace would be 1

    def test_sampler_respects_constraints(self, templates):
        rng = random.Random(3)
        comp = templates["nonreduced"]
        for _ in range(10):
            values = sample_parameters(comp, rng)
            block = [[values["a"], values["b"], values["c"]],
                     [values["d"], values["e"], values["f"]],
                     [values["g"], values["h"], values["i"]]]
            assert values["a"] + values["e"] + values["i"] == 0
            assert mat_rank(block) <= 1


class TestVerifyComponent:
    @pytest.mark.parametrize("name", ["segre_a", "segre_b", "nonreduced"])
    def test_components_pass(self, templates, name):
        assert verify_component(templates[name], 25, random.Random(5))

    def test_perturbed_template_fails(self, templates):
        base = templates["segre_a"]
        ring = base.ring
        rows = [list(row) for row in base.matrix]
        rows[1][5] = rows[1][5] + ring.one()  # breaks invariance of the row space
        from nilgrass.counterexample import ComponentParametrization
        broken = ComponentParametrization(name="broken", parameters=base.parameters,
                                          matrix=tuple(tuple(r) for r in rows),
                                          constraints=())
        assert not verify_component(broken, 10, random.Random(6))


class TestModuleStructure:
    def test_segre_types(self, templates):
        rng = random.Random(7)
        for _ in range(10):
            a = instantiate(templates["segre_a"],
                            sample_parameters(templates["segre_a"], rng))
            assert tuple(module_type(a)) == (4,)
            b = instantiate(templates["segre_b"],
                            sample_parameters(templates["segre_b"], rng))
            assert tuple(module_type(b)) == (2, 2)

    def test_nonreduced_types(self, templates):
        comp = templates["nonreduced"]
        rng = random.Random(8)
        seen = set()
        for _ in range(40):
            seen.add(tuple(module_type(instantiate(comp,
                                                   sample_parameters(comp, rng)))))
        # rank-one blocks with vanishing corner entries hit the remaining type
        structured = [
            dict(zip("abcdefghi", [QQ(x) for x in (0, 1, 0, 0, 0, 0, 0, 0, 0)])),
            dict(zip("abcdefghi", [QQ(x) for x in (0, 0, 1, 0, 0, 0, 0, 0, 0)])),
            {},
        ]
        for values in structured:
            seen.add(tuple(module_type(instantiate(comp, values))))
        assert seen == {(3, 1), (2, 2), (2, 1, 1)}


class TestSupports:
    @pytest.mark.parametrize("name", ["segre_a", "segre_b", "nonreduced"])
    def test_supports_inside_listed_subspaces(self, templates, name):
        support = observed_support(templates[name], 20, random.Random(9))
        assert support <= AMBIENT_SUPPORTS[name]

    def test_listed_sizes(self):
        assert len(AMBIENT_SUPPORTS["segre_a"]) == 12
        assert len(AMBIENT_SUPPORTS["segre_b"]) == 12
        assert len(AMBIENT_SUPPORTS["nonreduced"]) == 10


class TestMissingLinearForm:
    def test_membership_pair(self):
        ctx = locus_context()
        p = ctx.ring.var(subset_rank(8, MISSING_COORDINATE))
        assert not in_ideal(p)
        assert in_ideal(p * p)

    def test_full_check(self):
        assert verify_missing_linear_form(5, random.Random(10))

    def test_membership_only(self):
        assert verify_missing_linear_form(0)

    def test_span_member_is_vacuous_control(self):
        # a coordinate inside the linear span cannot separate ideal from locus
        ctx = locus_context()
        p = ctx.ring.var(subset_rank(8, (1, 2, 3, 5)))
        assert ctx.elim.apply(p).is_zero()
        assert in_ideal(p)


class TestRunAll:
    def test_all_checks_pass(self):
        results = run_all_checks(5, random.Random(11))
        assert all(ok for _, ok in results)
        names = [name for name, _ in results]
        assert "coordinate_not_in_ideal" in names
        assert "component_nonreduced" in names
