import logging
from pathlib import Path

from bs4 import BeautifulSoup
from jinja2 import Environment, FileSystemLoader

import html_table_generator
from config import CONVENTIONS, SCHEMA_VERSION, template_dir
from verify import summary_frame

SUMMARY_TEMPLATE = "verification_summary.html"


def build_summary_page(reports, output_path, include_timing: bool = False) -> Path:
    """Render the verify-all summary page and write it to output_path."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    # Set up Jinja2 environment
    env = Environment(loader=FileSystemLoader(str(template_dir)), autoescape=True)
    template = env.get_template(SUMMARY_TEMPLATE)

    df = summary_frame(reports)
    discrepancies = [
        {"check": report.check, "parameters": report.parameters, **entry}
        for report in reports
        for entry in report.discrepancies
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "passed": sum(1 for report in reports if report.passed),
        "total": len(reports),
        "conventions": CONVENTIONS,
        "discrepancies": discrepancies,
        "timings": (
            [(report.check, round(report.timing or 0.0, 3)) for report in reports]
            if include_timing
            else []
        ),
    }

    # Render the template with the data
    html_content = template.render(data)

    # The table is built by pandas, so insert it after rendering
    soup = BeautifulSoup(html_content, "html.parser")
    placeholder = soup.find(id="summary_table")
    if placeholder is None:
        raise ValueError(f"Template {SUMMARY_TEMPLATE} has no element with id 'summary_table'")
    table_html = html_table_generator.generate_html_table(df)
    placeholder.clear()
    placeholder.append(BeautifulSoup(table_html, "html.parser"))

    output_path.write_text(str(soup), encoding="utf-8")
    logging.info(f"Summary page written to {output_path}")
    return output_path
