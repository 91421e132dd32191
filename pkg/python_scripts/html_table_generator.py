import logging

import pandas as pd
from bs4 import BeautifulSoup


def generate_html_table(df: pd.DataFrame, outcome_column: str = "outcome") -> str:
    """
    Generate the summary HTML table without a wrapper div

    Parameters:
    df : pandas DataFrame
        One row per verification report
    outcome_column : str
        Column whose "fail" cells mark the row with the "fail" class
    """
    df = df.copy()

    # Empty cells instead of NaN/None for checks without a k or seed list
    df = df.astype(object).where(pd.notnull(df), "")

    # Generate the initial HTML table
    html_str = df.to_html(classes="dataframe", index=False, escape=True)

    # Parse the HTML using BeautifulSoup
    soup = BeautifulSoup(html_str, "html.parser")
    tbody = soup.find("tbody")

    if outcome_column in df.columns:
        position = list(df.columns).index(outcome_column)
        for row in tbody.find_all("tr"):
            cells = row.find_all("td")
            if len(cells) > position and cells[position].get_text(strip=True) == "fail":
                row["class"] = "fail"
    else:
        logging.warning(f"Column {outcome_column!r} not in summary table, rows left unmarked")

    colgroup = "".join(f'<col class="col{i}">' for i in range(1, len(df.columns) + 1))

    # Create the table structure without the wrapper div
    new_table = f"""
        <table>
            <colgroup>{colgroup}</colgroup>
            <thead>
                <tr>
                    {"".join(f"<th>{col}</th>" for col in df.columns)}
                </tr>
            </thead>
            {str(tbody)}
        </table>
    """

    return new_table
