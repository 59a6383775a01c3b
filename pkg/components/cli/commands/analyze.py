from components.analysis.linear import (
    d12_disappearance_threshold,
    d21_disappearance_threshold,
    d_bif_limit,
    eigenvalue,
    existence_bound,
    mode_table,
    theorem_large_cross,
)
from components.analysis.model import classify_regime, coexistence_state
from components.cli.plots import env
from components.cli.writers import write_modes, write_rows
from components.exceptions import DomainError
from components.logs import logger
from components.models.config import RunConfig
from components.models.params import ModelParams

from .plugin import CommandPlugin, ExitCode, output_dir

NO_BIFURCATION = "no bifurcation for any d>0"
THRESHOLD_COLUMNS = [
    "k",
    "d21_threshold",
    "d21_cutoff",
    "d12_threshold",
    "d12_cutoff",
    "d21_limit",
    "d12_limit",
    "bounded",
    "bound",
    "bound_satisfied",
]


def _try(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except DomainError:
        return None


def threshold_rows(p: ModelParams, ks) -> list[tuple]:
    rows = []
    for k in ks:
        lam = eigenvalue(k)
        t21 = _try(d21_disappearance_threshold, p, k, lam=lam)
        t12 = _try(d12_disappearance_threshold, p, k, lam=lam)
        l21 = _try(d_bif_limit, p, k, "d21", lam=lam)
        l12 = _try(d_bif_limit, p, k, "d12", lam=lam)
        bound = _try(existence_bound, p, k, lam=lam)
        rows.append(
            (
                k,
                t21 and t21.value,
                t21 and t21.cutoff,
                t12 and t12.value,
                t12 and t12.cutoff,
                l21 and l21.value,
                l12 and l12.value,
                bound and bound.coefficient,
                bound and bound.bound,
                bound and bound.satisfied,
            )
        )
    return rows


class AnalyzeCommand(CommandPlugin):
    name = "analyze"
    help = "regime, mode table, thresholds and the large cross-diffusion check"

    def handle(self, config: RunConfig, args) -> int:
        p, out = config.params, output_dir(config, args)
        ks = range(config.k_min, config.k_max + 1)
        positive_ks = range(max(config.k_min, 1), config.k_max + 1)

        report = classify_regime(p)
        equilibria = coexistence_state(p)
        notices = []
        if report.case == "2w":
            notices.append(NO_BIFURCATION)

        varied = config.sweep_param if config.sweep_param in ("d12", "d21") else None
        try:
            modes = mode_table(p, ks, varied=varied)
            thresholds = threshold_rows(p, positive_ks)
        except DomainError as exc:
            notices.append(f"{exc}; mode analysis skipped")
            modes, thresholds = [], []
        for notice in notices:
            logger.warning(notice)

        try:
            check, reason = theorem_large_cross(p, positive_ks), None
        except DomainError as exc:
            check, reason = None, str(exc)

        regime_text = env.get_template("regime.txt.j2").render(
            report=report, equilibria=equilibria, notices=notices, modes=modes
        )
        (out / "regime.txt").write_text(regime_text, encoding="utf-8")
        write_modes(out / "modes.csv", modes)
        write_rows(out / "thresholds.csv", THRESHOLD_COLUMNS, thresholds)
        (out / "theorem.txt").write_text(
            env.get_template("theorem.txt.j2").render(check=check, reason=reason),
            encoding="utf-8",
        )

        print(regime_text, end="")
        logger.success(f"Analysis written to {out}")
        return ExitCode.OK
