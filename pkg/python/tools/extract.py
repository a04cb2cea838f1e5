from python.helpers import errors, holo, persist
from python.helpers.errors import ClassificationError
from python.helpers.matrix_core import RandomModel
from python.helpers.print_style import PrintStyle
from python.helpers.tool import Command, Response


class Extract(Command):

    async def execute(self, **kwargs):
        H = self.load_function()
        n_max = self.settings["n_max"]
        nodes = self.params().resolved_nodes

        warnings = []
        warning = holo.aliasing_warning(nodes, n_max)
        if warning:
            PrintStyle.warning(warning)
            self.log.log("warning", "aliasing", warning)
            warnings.append(warning)

        norms = holo.component_norm_estimates(H, n_max, nodes)
        active = holo.active_degrees(norms, self.settings["tol_zero_component"])
        model = RandomModel(self.settings["seed"])
        components = []
        try:
            for n in active:
                P = holo.extract_component(H, n, nodes)
                T = holo.linearize(P, model, self.settings["linearize_samples"], self.settings["tol_verify"])
                components.append({**persist.component_to_dict(P, norms[n]), "linearization": persist.linear_map_to_dict(T)})
        except ClassificationError as e:
            return Response(
                body={"norm_estimates": norms, "active_degrees": active, "warnings": warnings, "error": e.to_dict()},
                exit_code=2,
                message=errors.error_text(e),
                summary={"outcome": type(e).__name__},
            )

        return Response(
            body={
                "nodes": nodes,
                "norm_estimates": norms,
                "active_degrees": active,
                "warnings": warnings,
                "components": components,
            },
            summary={"active degrees": active, "nodes": nodes},
        )
