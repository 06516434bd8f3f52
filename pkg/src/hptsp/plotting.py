"""Figure rendering for the experiment reports (headless, file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_sac_plot(report, path) -> None:
    """Per-output-bit flip rates with the 50% target line and the test band."""
    rates = report.per_output_bit_rates
    fig, ax = plt.subplots(figsize=(9, 3.2))
    ax.plot(range(len(rates)), rates, ".", markersize=3, color="tab:blue")
    ax.axhline(0.5, color="black", linewidth=0.8)
    ax.axhspan(0.45, 0.55, color="tab:green", alpha=0.12)
    ax.set_xlabel("output bit")
    ax.set_ylabel("flip rate")
    ax.set_ylim(0.4, 0.6)
    ax.set_title(f"single-bit avalanche, {report.trials} trials, {report.input_len}-byte inputs")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_leak_plot(reports, path) -> None:
    """Observed rank correlations per feature, one bar per report."""
    labels = [f"{r.feature_name}\n({r.target})" for r in reports]
    values = [r.correlation for r in reports]
    fig, ax = plt.subplots(figsize=(1.8 * max(4, len(reports)), 3.6))
    bars = ax.bar(labels, values, color="tab:blue", width=0.5)
    for bar, r in zip(bars, reports):
        ax.annotate(
            f"p={r.p_value_chance:.3g}",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom" if bar.get_height() >= 0 else "top",
            fontsize=8,
        )
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_ylabel("rank correlation with full ordering")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_census_plot(report, path) -> None:
    fig, ax = plt.subplots(figsize=(8, 3.2))
    n_buckets = len(report.counts)
    ax.bar(range(n_buckets), report.counts, width=1.0, color="tab:blue", edgecolor="none")
    ax.axhline(report.mean_occupancy, color="tab:red", linewidth=0.9, label="uniform mean")
    ax.set_xlabel(f"leading {report.prefix_bits}-bit bucket")
    ax.set_ylabel("routes")
    ax.set_title(f"digest census, chi2={report.chi_square:.1f}, p={report.p_value:.3g}")
    ax.legend(fontsize=8)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def save_bench_plot(records, path) -> None:
    """Wall time against v on a log scale next to the v! reference curve."""
    vs = [r.v for r in records]
    times = [r.wall_time_ms / 1000.0 for r in records]
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    ax.semilogy(vs, times, "o-", color="tab:blue", label="measured")
    # factorial reference through the first point
    import math

    ref = [times[0] * math.factorial(v) / math.factorial(vs[0]) for v in vs]
    ax.semilogy(vs, ref, "--", color="tab:gray", label="v! reference")
    ax.set_xlabel("vertices")
    ax.set_ylabel("solve wall time (s)")
    ax.set_xticks(vs)
    ax.legend()
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
