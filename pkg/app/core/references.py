# app/core/references.py

"""Registro check_name -> ecuación verificada"""
from typing import Dict

# Una entrada por check; los nombres con sufijo (" n=3", "_closed", "_j2")
# se resuelven por el prefijo registrado más largo.
CHECK_REFERENCES: Dict[str, str] = {
    # t-expansiones y valores L
    "half_derivative_theorem": "T_and_L_function",
    "half_derivative_numeric": "half_AG",
    "glaisher_t0": "Zagier_identity",
    "glaisher_t1": "Zagier_identity",
    "zagier_direct_sum": "Zagier_identity",
    "t_value_routes": "T_and_L_function",
    "t_value": "T_and_L_function",
    "l_value": "T_and_L_function",
    "mellin_asymptotics": "prop:Mellin",
    "mellin_monotone": "prop:Mellin",
    # identidades q exactas
    "qbinomial_recurrence_low": "binomial_1",
    "qbinomial_recurrence_high": "binomial_2",
    "qbinomial_formula": "binomial_3",
    "jacobi_triple_product": "Jacobi",
    "andrews_gordon_product": "Andrews_Gordon",
    "andrews_gordon_theta": "Andrews_Gordon",
    "variant_andrews_gordon": "prop:A_and_Bailey",
    "h_at_unity": "H_m_a_unity",
    "bridge_identity": "identity_X",
    "bc_lemma": "bc_lemma",
    "bailey_lemma": "prop:Bailey",
    "bailey_corollary": "coro:Bailey",
    "bailey_symmetric_first": "Bailey_1",
    "bailey_symmetric_second": "Bailey_2",
    "mid_relate": "mid_relate",
    "delta_identity": "delta_n0",
    # funciones H
    "h_closed_form": "H_m_a_and",
    "h_difference_equation": "difference_general_a",
    "htilde_difference_equation": "dif_H_m_a_gen",
    "h_lemma": "H_m_a_finite",
    "g_equals_h21_multisum": "define_G",
    "g_closed_form": "RR_y",
    "g_equals_htilde20": "G_x",
    "g_difference_equation": "dif_eq_G_x",
    # raíces de la unidad y modularidad
    "kashaev_value": "define_X_a",
    "kashaev_double_sum": "kashaev_double_sum",
    "omega_pochhammer_top": "omega_1",
    "omega_conjugate_product": "omega_1",
    "omega_ratio_sum": "omega_2",
    "asymptotic_expansion": "asymptotic_X_omega",
    "asymptotic_monotone": "asymptotic_X_omega",
    "leading_order_ratio": "formula_2m",
    "matrix_involution": "define_matrix",
    "matrix_symmetric": "define_matrix",
    "poisson_modularity": "poisson_summation",
    "theta_period_phase": "poisson_summation",
    "nearly_modular": "modular_Phi_tilde",
}

_SEPARATORS = (" ", "_")


def reference_for(check_name: str) -> str:
    """Etiqueta de la ecuación comprobada; KeyError si el check no está registrado"""
    if check_name in CHECK_REFERENCES:
        return CHECK_REFERENCES[check_name]
    best = None
    for name in CHECK_REFERENCES:
        if check_name.startswith(name) and check_name[len(name)] in _SEPARATORS:
            if best is None or len(name) > len(best):
                best = name
    if best is None:
        raise KeyError(f"Unregistered check name: {check_name!r}")
    return CHECK_REFERENCES[best]
