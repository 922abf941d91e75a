"""INI config files mapped onto ExperimentConfig.

Every key is optional and falls back to the package default; sections are
[data], [method], [ensemble], [kernel], [run]. Values are plain scalars,
comma-separated lists for grids and feature columns, and true/false for
flags. The resolved configuration is echoed into every report.
"""

import configparser

from .datagen import MixtureSpec, SplitSpec
from .ensemble import EnsembleConfig
from .experiment import ExperimentConfig
from .ingest import CsvSchema
from .kernels import KernelSpec
from .regression import SolverParams


def _get(parser, section, key, cast, default):
    if parser.has_option(section, key):
        raw = parser.get(section, key).strip()
        if cast is bool:
            return raw.lower() in ("1", "true", "yes", "on")
        return cast(raw)
    return default


def _get_floats(parser, section, key):
    if not parser.has_option(section, key):
        return ()
    raw = parser.get(section, key)
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


def _get_names(parser, section, key):
    if not parser.has_option(section, key):
        return ()
    return tuple(tok.strip() for tok in parser.get(section, key).split(",") if tok.strip())


def parse_config(parser: configparser.ConfigParser) -> ExperimentConfig:
    for section in parser.sections():
        if section not in ("data", "method", "ensemble", "kernel", "run"):
            raise ValueError(f"unknown config section [{section}]")

    mixture = MixtureSpec(
        d=_get(parser, "data", "dims", int, MixtureSpec.d),
        m1=_get(parser, "data", "mean1", float, MixtureSpec.m1),
        m2=_get(parser, "data", "mean2", float, MixtureSpec.m2),
        sigma_x=_get(parser, "data", "sigma_x", float, MixtureSpec.sigma_x),
        sigma_eps=_get(parser, "data", "sigma_eps", float, MixtureSpec.sigma_eps),
        noise_features=_get(parser, "data", "noise_features", int, MixtureSpec.noise_features),
    )
    split = SplitSpec(
        train_fraction=_get(parser, "data", "train_fraction", float, SplitSpec.train_fraction),
        labeled_fraction=_get(parser, "data", "labeled_fraction", float, SplitSpec.labeled_fraction),
        weak_fraction=_get(parser, "data", "weak_fraction", float, SplitSpec.weak_fraction),
        delta=_get(parser, "data", "delta", float, SplitSpec.delta),
        noisy_weak_means=_get(parser, "data", "noisy_weak_means", bool, SplitSpec.noisy_weak_means),
    )
    source = _get(parser, "data", "source", str, "synthetic")
    csv_schema = None
    csv_path = _get(parser, "data", "csv_path", str, None)
    feature_columns = _get_names(parser, "data", "feature_columns")
    if source == "csv":
        if not feature_columns:
            raise ValueError("csv source requires data.feature_columns")
        csv_schema = CsvSchema(
            feature_columns=feature_columns,
            target_column=_get(parser, "data", "target_column", str, "target"),
            delimiter=_get(parser, "data", "delimiter", str, ","),
            has_header=_get(parser, "data", "has_header", bool, True),
            standardize=_get(parser, "data", "standardize", bool, True),
            strict=_get(parser, "data", "strict", bool, True),
        )
    solver = SolverParams(
        gamma=_get(parser, "method", "gamma", float, SolverParams.gamma),
        beta=_get(parser, "method", "beta", float, SolverParams.beta),
    )
    ensemble = EnsembleConfig(
        r=_get(parser, "ensemble", "runs", int, EnsembleConfig.r),
        k_start=_get(parser, "ensemble", "k_start", int, EnsembleConfig.k_start),
        k_step=_get(parser, "ensemble", "k_step", int, EnsembleConfig.k_step),
        max_iters=_get(parser, "ensemble", "max_iters", int, EnsembleConfig.max_iters),
        weight_mode=_get(parser, "ensemble", "weight_mode", str, EnsembleConfig.weight_mode),
    )
    kernel = KernelSpec(
        family=_get(parser, "kernel", "family", str, KernelSpec.family),
        length_scale=_get(parser, "kernel", "length_scale", float, 6.6),
        variance=_get(parser, "kernel", "variance", float, KernelSpec.variance),
    )
    return ExperimentConfig(
        source=source,
        n=_get(parser, "data", "n", int, 1000),
        mixture=mixture,
        split=split,
        csv_path=csv_path,
        csv_schema=csv_schema,
        method=_get(parser, "method", "name", str, "wsr_lrcm"),
        solver=solver,
        ensemble=ensemble,
        kernel=kernel,
        treat_weak_as=_get(parser, "method", "treat_weak_as", str, "unlabeled"),
        repetitions=_get(parser, "run", "repetitions", int, None),
        master_seed=_get(parser, "run", "master_seed", int, 0),
        cv_folds=_get(parser, "run", "cv_folds", int, 5),
        grid_beta=_get_floats(parser, "run", "grid_beta"),
        grid_gamma=_get_floats(parser, "run", "grid_gamma"),
        workers=_get(parser, "run", "workers", int, 1),
    )


def load_config(path) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as fh:
        parser.read_file(fh)
    return parse_config(parser)
