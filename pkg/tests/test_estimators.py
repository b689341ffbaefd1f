import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cplanner import (
    ContrastiveExplainer,
    ExplanationError,
    MoveAction,
    UNREACHABLE,
    ValueIterationSolver,
    check_mdp,
)

E, S = MoveAction.EAST, MoveAction.SOUTH


class TestSolverEstimator:
    def test_defaults_round_trip_get_params(self):
        solver = ValueIterationSolver()
        params = solver.get_params()
        assert params == {
            "property_kind": "expected-reward",
            "direction": "min",
            "tolerance": 1e-6,
            "max_iterations": 100_000,
        }

    def test_set_params_returns_self(self):
        solver = ValueIterationSolver()
        assert solver.set_params(tolerance=1e-8) is solver
        assert solver.get_params()["tolerance"] == 1e-8

    def test_clone_preserves_params_not_fit(self, reference_mdp):
        solver = ValueIterationSolver(tolerance=1e-7).fit(reference_mdp)
        copy = clone(solver)
        assert copy.get_params() == solver.get_params()
        with pytest.raises(NotFittedError):
            copy.predict()

    def test_not_fitted_errors(self):
        solver = ValueIterationSolver()
        with pytest.raises(NotFittedError):
            solver.predict()
        with pytest.raises(NotFittedError):
            solver.route()
        with pytest.raises(NotFittedError):
            solver.simulate()

    def test_fit_returns_self_and_sets_attributes(self, reference_mdp):
        solver = ValueIterationSolver()
        assert solver.fit(reference_mdp) is solver
        assert solver.values_.value(10) == pytest.approx(6 / 0.9, abs=1e-4)
        assert solver.policy_.action(10) == E

    def test_predict_subset_order(self, reference_mdp):
        solver = ValueIterationSolver().fit(reference_mdp)
        got = solver.predict([11, 10, 2])
        assert got[0] == pytest.approx(5 / 0.9, abs=1e-4)
        assert got[1] == pytest.approx(6 / 0.9, abs=1e-4)
        assert got[2] == UNREACHABLE

    def test_predict_all_states_by_default(self, reference_mdp):
        solver = ValueIterationSolver().fit(reference_mdp)
        assert len(solver.predict()) == len(reference_mdp.states)

    def test_route(self, reference_mdp):
        solver = ValueIterationSolver().fit(reference_mdp)
        assert solver.route().terminal == 4

    def test_simulate_is_seeded(self, reference_mdp):
        solver = ValueIterationSolver().fit(reference_mdp)
        assert solver.simulate(episodes=1000, seed=3) == solver.simulate(
            episodes=1000, seed=3)

    def test_invalid_property_kind(self, reference_mdp):
        with pytest.raises(ValueError):
            ValueIterationSolver(property_kind="shortest-path").fit(reference_mdp)

    def test_invalid_direction(self, reference_mdp):
        with pytest.raises(ValueError):
            ValueIterationSolver(direction="sideways").fit(reference_mdp)

    def test_rejects_non_mdp_input(self):
        with pytest.raises(TypeError):
            ValueIterationSolver().fit({"not": "an mdp"})
        with pytest.raises(TypeError):
            check_mdp(42)


class TestExplainerEstimator:
    def test_get_params_includes_alpha(self):
        params = ContrastiveExplainer(alpha=2.5).get_params()
        assert params["alpha"] == 2.5
        assert params["direction"] == "min"

    def test_negative_alpha_rejected_at_fit(self, reference_mdp):
        with pytest.raises(ValueError, match="alpha"):
            ContrastiveExplainer(alpha=-1.0).fit(reference_mdp)

    def test_not_fitted_errors(self):
        explainer = ContrastiveExplainer()
        with pytest.raises(NotFittedError):
            explainer.explain()
        with pytest.raises(NotFittedError):
            explainer.contrast(10, "east", "south")
        with pytest.raises(NotFittedError):
            explainer.transform()
        with pytest.raises(NotFittedError):
            explainer.critical_ids_

    def test_fit_exposes_solution(self, reference_explainer):
        assert reference_explainer.critical_ids_ == [5, 7, 10, 12, 14]
        assert reference_explainer.route_.terminal == 4
        assert reference_explainer.policy_.action(5) == S

    def test_explain_accepts_strings_and_enums(self, reference_explainer):
        from cplanner import ExplanationType

        by_name = reference_explainer.explain("selective")
        by_enum = reference_explainer.explain(ExplanationType.SELECTIVE)
        assert by_name.text == by_enum.text

    def test_explain_unknown_type(self, reference_explainer):
        with pytest.raises(ValueError):
            reference_explainer.explain("persuasive")

    def test_contrast_accepts_action_labels(self, reference_explainer):
        text = reference_explainer.contrast(10, "east", "south")
        assert "4 future decision points versus 2" in text

    def test_contrast_unknown_label(self, reference_explainer):
        with pytest.raises(ValueError, match="unknown action"):
            reference_explainer.contrast(10, "upward", "south")

    def test_contrast_non_critical(self, reference_explainer):
        with pytest.raises(ExplanationError):
            reference_explainer.contrast(11, "east", "west")

    def test_transform_docs(self, reference_explainer):
        doc = reference_explainer.transform([13])[0]
        assert doc["value"] == "unreachable"
        assert doc["critical"] is False
        assert doc["enabled"] == []
        doc = reference_explainer.transform([10])[0]
        assert doc["critical"] is True
        assert doc["chosen"] == "east"
        assert doc["constrictiveness"] == {"east": 4, "south": 2}

    def test_transform_non_critical_state_has_no_tree_fields(
            self, reference_explainer):
        doc = reference_explainer.transform([11])[0]
        assert doc["critical"] is False
        assert "constrictiveness" not in doc
        assert "tree_states" not in doc
        assert doc["impact"]["east"] == pytest.approx(4.5555, abs=1e-3)

    def test_clone_is_unfitted(self, reference_explainer):
        copy = clone(reference_explainer)
        with pytest.raises(NotFittedError):
            copy.explain()

    def test_alpha_changes_critical_set(self, reference_mdp):
        explainer = ContrastiveExplainer(alpha=1e12).fit(reference_mdp)
        assert explainer.critical_ids_ == [7, 12, 14]
