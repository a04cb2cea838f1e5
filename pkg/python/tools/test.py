from python.helpers import holo, ortho_props, structure
from python.helpers.matrix_core import RandomModel
from python.helpers.tool import Command, Response


class HypothesisTest(Command):
    """Runs every property tester; status 0 only when all of them pass."""

    async def execute(self, **kwargs):
        H = self.load_function()
        trials, tol, workers = self.settings["trials"], self.settings["tol_verify"], self.settings["workers"]
        models = RandomModel(self.settings["seed"]).fork(6)

        verdicts = [
            ortho_props.test_orthogonal_additivity(H, trials, tol, models[0], workers),
            ortho_props.test_orthogonal_multiplicativity(H, trials, tol, models[1], workers),
            ortho_props.test_zero_product_preservation(H, trials, tol, models[2], workers),
        ]

        nodes = self.params().resolved_nodes
        norms = holo.component_norm_estimates(H, self.settings["n_max"], nodes)
        active = holo.active_degrees(norms, self.settings["tol_zero_component"])
        components = [holo.extract_component(H, n, nodes) for n in active]
        if components:
            verdicts.append(ortho_props.test_component_cross_orthogonality(components, trials, tol, models[3], workers))
            verdicts.append(ortho_props.test_component_additivity(components, trials, tol, models[4], workers))
        else:
            self.log.log("info", "components", "no active components, component testers skipped")

        if self.is_gallery_source():
            verdicts.append(structure.test_jordan_relation(self.gallery_entry().map, trials, tol, models[5], workers))

        for verdict in verdicts:
            self.log.log("verdict", verdict.name, "passed" if verdict.passed else "failed", max_residual=verdict.max_residual)

        constant = ortho_props.constant_term_residual(H)
        passed = all(v.passed for v in verdicts) and constant <= tol
        return Response(
            body={
                "verdicts": verdicts,
                "constant_term": constant,
                "active_degrees": active,
                "passed": passed,
                "log": self.log.output(),
            },
            exit_code=0 if passed else 2,
            summary={v.name: f"{'pass' if v.passed else 'FAIL'} ({v.max_residual:.2e})" for v in verdicts},
        )
