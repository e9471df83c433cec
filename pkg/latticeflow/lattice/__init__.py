""" Rank-1 lattice rules, function space settings, weights and the CBC construction """
from .core import GeneratingVector, lattice_points, shift_points, random_shift, monte_carlo_points, \
                  qmc_integrate, shifted_estimate, save_generating_vector, load_generating_vector
from .special import bernoulli_poly, riemann_zeta, hurwitz_zeta, rho, stirling2, eulerian, log_factorial, \
                     factorial_float
from .kernels import SpaceSetting, kernel_omega, kernel_table
from .weights import DecaySequence, WeightScheme, RatePlan, select_rate_plan, build_weights, weighted_sum, \
                     norm_bound, appendix_constant, gap_bound, pod_weights, spod_periodic_weights, spod_k_weights
from .cbc import squared_wce, worst_case_error, theoretical_bound, lambda_grid, cbc_construct, \
                 WorstCaseReport, worst_case_report
