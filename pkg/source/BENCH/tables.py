from pathlib import Path

from BENCH.aggregate import pareto_frontier
from BENCH.metrics import hermite_constant_root, worst_case_bound


# -----------------------------
# Markdown helpers
# -----------------------------
def make_table(title, rows, header):
    out = []
    out.append(f"## {title}\n")
    out.append("| " + " | ".join(header) + " |")
    out.append("|" + " --- |" * len(header))
    for r in rows:
        out.append("| " + " | ".join(r) + " |")
    out.append("")
    return "\n".join(out)


def _interval(mean, low, high, digits):
    return f"{mean:.{digits}f} [{low:.{digits}f}, {high:.{digits}f}]"


# -----------------------------
# Report
# -----------------------------
def render_report(rows, delta):
    rows = list(rows)
    if not rows:
        return "No successful bench records.\n"

    frontier = set(pareto_frontier(rows))
    header = ["algo", "preprocess", "seeds", "root Hermite factor (99.9% CI)", "mean log time (99.9% CI)", "Pareto"]

    md = []
    for dim in sorted({r.dim for r in rows}):
        table = []
        for r in (r for r in rows if r.dim == dim):
            table.append([
                r.algo,
                "yes" if r.preprocess else "no",
                str(r.count),
                _interval(r.mean_hermite_root, r.ci_low, r.ci_high, 5),
                _interval(r.mean_log_time, r.log_time_ci_low, r.log_time_ci_high, 3),
                "*" if r in frontier else "",
            ])
        table.append([f"Worst-case bound (delta={delta})", "", "", f"{worst_case_bound(dim, delta):.5f}", "", ""])
        table.append(["Hermite constant reference", "", "", f"{hermite_constant_root(dim):.5f}", "", ""])
        md.append(make_table(f"Dimension {dim}", table, header))

    return "\n".join(md)


def write_report(path, rows, delta):
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(render_report(rows, delta), encoding="utf-8")
    return output_path
