""" Contains networks, activations, regularity audits and training """
from .activations import ActivationKind, activation_value, activation_derivative, activation_nth_derivative, \
                         derivative_bound_A, sigmoid_exact_derivative, sigmoid_lower_bound, \
                         sigmoid_derivative_upper_bound
from .network import NetworkParams, forward, forward_cache, backward, save_network, load_network
from .regularity import RegularityProfile, RestrictionReport, regularity_profile, regularity_bound, \
                        check_restrictions, sup_norm_estimate, swish_sl_bound, demand_sl_bound
from .training import TrainConfig, TrainResult, ErrorEstimate, Adam, loss_J, reg_R1, reg_R1_gradient, \
                      objective_gradient, glorot_init, train, estimate_generalization, write_training_log
from .metrics import Metrics, GeneralizationMetrics
