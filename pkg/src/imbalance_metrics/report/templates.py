"""Contains all templates used for generating the text reports and plotting scripts"""
import jinja2

from imbalance_metrics.report.formatters import fmt_cells, fmt_metric, fmt_ratio

# Initializing Jinja
package_loader = jinja2.PackageLoader("imbalance_metrics", "report/templates")
jinja2_env = jinja2.Environment(
    lstrip_blocks=True,
    trim_blocks=True,
    keep_trailing_newline=True,
    loader=package_loader,
)
jinja2_env.filters["fmt_metric"] = fmt_metric
jinja2_env.filters["fmt_ratio"] = fmt_ratio
jinja2_env.filters["fmt_cells"] = fmt_cells


def template(template_name: str) -> jinja2.Template:
    """Get the template object given the name.

    Args:
      template_name: The name of the template file (.txt, .gp)

    Returns:
      The jinja2 template.

    """
    return jinja2_env.get_template(template_name)
