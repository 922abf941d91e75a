"""End-to-end experiment orchestration.

One repetition = derive seeds, build (or load) a dataset, assign roles,
fit with the configured method, and score MWD/MAE on the test mask.
The Monte-Carlo runner repeats that with independent spawned seeds and
aggregates; grid_search cross-validates (beta, gamma) over the observed
points only. Timing covers the fit phase (clustering, factor build,
solves) and excludes data generation and loading.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from .datagen import MixtureSpec, SplitSpec, generate, split_and_corrupt
from .ensemble import EnsembleConfig, build_ensemble, coassociation_degree, coassociation_factor
from .errors import InsufficientLabels, WeakregError
from .ingest import CsvSchema, assign_roles, load_csv
from .kernels import KernelSpec
from .labels import WeakLabel
from .metrics import mae, mwd
from .regression import SolverParams, fit_dense, fit_lowrank

log = logging.getLogger(__name__)

METHODS = ("wsr_lrcm", "ssr_rbf_dense")
LARGE_SAMPLE_CUTOFF = 100_000  # from here up, default to a single repetition
CV_TIE_TOL = 1e-9


@dataclass(frozen=True)
class ExperimentConfig:
    source: str = "synthetic"  # "synthetic" | "csv"
    n: int = 1000
    mixture: MixtureSpec = MixtureSpec()
    split: SplitSpec = SplitSpec()
    csv_path: str | None = None
    csv_schema: CsvSchema | None = None
    method: str = "wsr_lrcm"
    solver: SolverParams = SolverParams()
    ensemble: EnsembleConfig = EnsembleConfig()
    kernel: KernelSpec = KernelSpec(length_scale=6.6)
    treat_weak_as: str = "unlabeled"
    repetitions: int | None = None  # None: 40 below the large-sample cutoff, else 1
    master_seed: int = 0
    cv_folds: int = 5
    grid_beta: tuple = ()
    grid_gamma: tuple = ()
    workers: int = 1

    def __post_init__(self):
        if self.source not in ("synthetic", "csv"):
            raise ValueError("source must be 'synthetic' or 'csv'")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.repetitions is not None and self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.source == "csv" and not self.csv_path:
            raise ValueError("csv source requires csv_path")
        if any(v <= 0 for v in tuple(self.grid_beta) + tuple(self.grid_gamma)):
            raise ValueError("grid values must be positive")

    def resolved_repetitions(self) -> int:
        if self.repetitions is not None:
            return self.repetitions
        return 1 if self.n >= LARGE_SAMPLE_CUTOFF else 40


@dataclass(frozen=True)
class RepetitionResult:
    index: int
    mwd: float
    mae: float
    fit_seconds: float


@dataclass
class RunReport:
    results: list = field(default_factory=list)
    failures: list = field(default_factory=list)  # (repetition index, message)
    config_echo: dict = field(default_factory=dict)

    def _values(self, attr):
        return np.array([getattr(r, attr) for r in self.results], dtype=np.float64)

    @property
    def mwd_mean(self) -> float:
        return float(self._values("mwd").mean())

    @property
    def mwd_std(self) -> float:
        return float(self._values("mwd").std())

    @property
    def mae_mean(self) -> float:
        return float(self._values("mae").mean())

    @property
    def mae_std(self) -> float:
        return float(self._values("mae").std())

    @property
    def fit_seconds_mean(self) -> float:
        return float(self._values("fit_seconds").mean())


def config_echo(config: ExperimentConfig) -> dict:
    """Flat, deterministic key/value view of the resolved configuration."""
    echo = {
        "source": config.source,
        "method": config.method,
        "beta": config.solver.beta,
        "gamma": config.solver.gamma,
        "master_seed": config.master_seed,
        "repetitions": config.resolved_repetitions(),
        "workers": config.workers,
    }
    if config.source == "synthetic":
        echo.update(
            n=config.n,
            dims=config.mixture.d,
            mean1=config.mixture.m1,
            mean2=config.mixture.m2,
            sigma_x=config.mixture.sigma_x,
            sigma_eps=config.mixture.sigma_eps,
            noise_features=config.mixture.noise_features,
            train_fraction=config.split.train_fraction,
        )
    else:
        echo.update(csv_path=config.csv_path)
    echo.update(
        labeled_fraction=config.split.labeled_fraction,
        weak_fraction=config.split.weak_fraction,
        delta=config.split.delta,
    )
    if config.method == "wsr_lrcm":
        echo.update(
            ensemble_runs=config.ensemble.r,
            k_start=config.ensemble.k_start,
            k_step=config.ensemble.k_step,
            max_iters=config.ensemble.max_iters,
            weight_mode=config.ensemble.weight_mode,
        )
    else:
        echo.update(
            kernel=config.kernel.family,
            length_scale=config.kernel.length_scale,
            variance=config.kernel.variance,
            treat_weak_as=config.treat_weak_as,
        )
    return echo


def _prepare_data(config: ExperimentConfig, rep_seed, shared_csv=None):
    """Dataset + labels for one repetition; returns (X, y, labels, masks, fit_seed)."""
    data_ss, roles_ss, fit_ss = rep_seed.spawn(3)
    if config.source == "synthetic":
        X, y_true, component = generate(config.mixture, config.n, data_ss)
        labels, masks = split_and_corrupt(y_true, component, config.split, roles_ss)
    else:
        X, y_true = shared_csv if shared_csv is not None else load_csv(
            config.csv_path, config.csv_schema
        )
        labels, masks = assign_roles(
            y_true.shape[0],
            config.split.labeled_fraction,
            config.split.weak_fraction,
            config.split.delta,
            y_true,
            roles_ss,
        )
    return X, y_true, labels, masks, fit_ss


def _fit_once(config: ExperimentConfig, X, labels, fit_seed):
    """Run the configured solver; returns (prediction, fit_seconds)."""
    t0 = time.perf_counter()
    if config.method == "wsr_lrcm":
        ens_cfg = replace(config.ensemble, seed=int(fit_seed.generate_state(1)[0]))
        ens = build_ensemble(X, ens_cfg)
        pred = fit_lowrank(
            X, labels, config.solver, coassociation_factor(ens), coassociation_degree(ens)
        )
    else:
        pred = fit_dense(X, labels, config.solver, config.kernel, config.treat_weak_as)
    return pred, time.perf_counter() - t0


def _rep_seed(master_seed: int, repetition: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed).spawn(repetition + 1)[repetition]


def prepare_dataset(config: ExperimentConfig, repetition: int = 0):
    """The dataset a given repetition would see; returns (X, y_true, labels, masks)."""
    X, y_true, labels, masks, _ = _prepare_data(config, _rep_seed(config.master_seed, repetition))
    return X, y_true, labels, masks


def run_single(config: ExperimentConfig, repetition: int = 0):
    """One repetition end to end; returns (prediction, y_true, masks, fit_seconds)."""
    X, y_true, labels, masks, fit_ss = _prepare_data(
        config, _rep_seed(config.master_seed, repetition)
    )
    pred, seconds = _fit_once(config, X, labels, fit_ss)
    return pred, y_true, masks, seconds


def run_experiment(config: ExperimentConfig) -> RunReport:
    """Monte-Carlo repetitions with independent derived seeds.

    Failures inside a repetition are recorded with its index; completed
    repetitions are always preserved in the report.
    """
    reps = config.resolved_repetitions()
    rep_seeds = np.random.SeedSequence(config.master_seed).spawn(reps)
    shared_csv = None
    if config.source == "csv":
        shared_csv = load_csv(config.csv_path, config.csv_schema)

    def one(i):
        X, y_true, labels, masks, fit_ss = _prepare_data(
            config, rep_seeds[i], shared_csv
        )
        pred, seconds = _fit_once(config, X, labels, fit_ss)
        test = masks.test
        truth = y_true[test]
        return RepetitionResult(
            index=i,
            mwd=mwd(pred, truth, test),
            mae=mae(pred, truth, test),
            fit_seconds=seconds,
        )

    report = RunReport(config_echo=config_echo(config))
    outcomes: dict[int, object] = {}
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = {i: pool.submit(one, i) for i in range(reps)}
        for i, fut in futures.items():
            try:
                outcomes[i] = fut.result()
            except WeakregError as exc:
                outcomes[i] = exc
    else:
        for i in range(reps):
            try:
                outcomes[i] = one(i)
            except WeakregError as exc:
                outcomes[i] = exc
    for i in range(reps):
        out = outcomes[i]
        if isinstance(out, RepetitionResult):
            report.results.append(out)
        else:
            log.warning("repetition %d failed: %s", i, out)
            report.failures.append((i, f"{type(out).__name__}: {out}"))
    return report


@dataclass(frozen=True)
class GridSearchResult:
    best_beta: float
    best_gamma: float
    table: tuple  # rows of (beta, gamma, mean cv score)


def grid_search(config: ExperimentConfig) -> GridSearchResult:
    """K-fold CV over the observed (labeled + weak) points only.

    Held-out points are demoted to unlabeled, the model is refit, and the
    score is the mean squared-Wasserstein distance between their observed
    (a, s) and the refit prediction. Ties within 1e-9 go to the larger
    beta, then the larger gamma (stronger regularization).
    """
    betas = tuple(config.grid_beta) or (config.solver.beta,)
    gammas = tuple(config.grid_gamma) or (config.solver.gamma,)
    master = np.random.SeedSequence(config.master_seed)
    rep_seed, fold_seed = master.spawn(2)
    X, y_true, labels, masks, fit_ss = _prepare_data(config, rep_seed)

    pool = np.flatnonzero(masks.labeled | masks.weak)
    if pool.size < config.cv_folds:
        raise InsufficientLabels(
            f"{pool.size} observed points cannot fill {config.cv_folds} folds"
        )
    rng = np.random.default_rng(fold_seed)
    folds = np.array_split(rng.permutation(pool), config.cv_folds)

    factor = degree = None
    if config.method == "wsr_lrcm":
        ens_cfg = replace(config.ensemble, seed=int(fit_ss.generate_state(1)[0]))
        ens = build_ensemble(X, ens_cfg)
        factor, degree = coassociation_factor(ens), coassociation_degree(ens)

    rows = []
    for beta, gamma in product(betas, gammas):
        params = SolverParams(gamma=gamma, beta=beta)
        total = 0.0
        for fold in folds:
            held = set(int(i) for i in fold)
            cv_labels = [
                WeakLabel.unlabeled() if i in held else lab
                for i, lab in enumerate(labels)
            ]
            if config.method == "wsr_lrcm":
                pred = fit_lowrank(X, cv_labels, params, factor, degree)
            else:
                pred = fit_dense(X, cv_labels, params, config.kernel, config.treat_weak_as)
            for i in fold:
                lab = labels[i]
                total += (lab.a - pred.a_star[i]) ** 2 + (lab.s - pred.sigma_star[i]) ** 2
        rows.append((beta, gamma, total / pool.size))

    best_beta, best_gamma, best_score = rows[0]
    for beta, gamma, score in rows[1:]:
        if score < best_score - CV_TIE_TOL:
            best_beta, best_gamma, best_score = beta, gamma, score
        elif abs(score - best_score) <= CV_TIE_TOL and (beta, gamma) > (best_beta, best_gamma):
            best_beta, best_gamma, best_score = beta, gamma, score
    return GridSearchResult(best_beta, best_gamma, tuple(rows))
