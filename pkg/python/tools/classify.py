from python.helpers import errors
from python.helpers.errors import ClassificationError
from python.helpers.structure import classify_holomorphic
from python.helpers.tool import Command, Response


class Classify(Command):

    async def execute(self, **kwargs):
        H = self.load_function()
        try:
            result = classify_holomorphic(H, self.params(), self.log)
        except ClassificationError as e:
            return Response(
                body={"classification": None, "error": e.to_dict(), "log": self.log.output()},
                exit_code=2,
                message=errors.error_text(e),
                summary={"outcome": type(e).__name__},
            )

        summary = {"tag": result.tag.value, "k_anchor": result.k_anchor}
        for n, lam in enumerate(result.lambdas, start=1):
            summary[f"lambda_{n}"] = f"{lam.real:.6g}{lam.imag:+.6g}j"
        zero_product = result.report.get("verdicts", {}).get("zero_product_preservation")
        if zero_product is not None:
            summary["zero_products"] = "preserved" if zero_product.passed else "violated"
        warnings = self.log.of_type("warning")
        if warnings:
            summary["warnings"] = ", ".join(item.heading for item in warnings)
        return Response(body={"classification": result}, exit_code=0, summary=summary)
