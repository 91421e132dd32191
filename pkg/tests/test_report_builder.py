from bs4 import BeautifulSoup

from html_table_generator import generate_html_table
from report_builder import build_summary_page
from verify import VerificationReport, summary_frame


def sample_reports():
    return [
        VerificationReport("main_theorem", {"rank": 2, "k": 1, "order": 5, "seeds": [11]}, True),
        VerificationReport(
            "corollary",
            {"rank": 2, "k": 1, "order": 5, "seeds": [11]},
            True,
            discrepancies=[{"branch": "chi_vir", "stated": 0, "computed": {"q^1": "1"}}],
        ),
        VerificationReport("tangent_characters", {"max_rank": 2, "max_n": 3}, False, failures=[{"kind": "p2"}]),
    ]


def test_table_marks_failed_rows():
    soup = BeautifulSoup(generate_html_table(summary_frame(sample_reports())), "html.parser")
    assert len(soup.find("colgroup").find_all("col")) == 8
    rows = soup.find("tbody").find_all("tr")
    assert len(rows) == 3
    assert [row.get("class") for row in rows] == [None, None, ["fail"]]


def test_summary_page(tmp_path):
    path = build_summary_page(sample_reports(), tmp_path / "html" / "summary.html", include_timing=False)
    soup = BeautifulSoup(path.read_text(encoding="utf-8"), "html.parser")
    assert soup.find(id="summary_table").find("table") is not None
    assert "2 of 3 checks passed" in soup.get_text()
    assert "chi_vir" in soup.get_text()
    assert "Timing" not in soup.get_text()
