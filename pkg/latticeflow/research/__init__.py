""" Targets, datasets, experiment grids and their results """
from .target import PeriodicAlgebraicTarget, target_eval
from .dataset import dataset_columns, export_dataset, ingest_dataset
from .experiment import DEFAULT_CONFIG, HYPERPARAMETER_SETS, ExperimentSpec, ExperimentRecord, \
                        experiment_lattice, training_points, run_cell, run_experiment, run_baseline
from .results import records_to_frame, aggregate, write_csv, plot_data, rate_fit, rate_table, decay_slope, \
                     plot_results
