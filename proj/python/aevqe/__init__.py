# Copyright 2026 The AEVQE Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Ancilla-entangled variational eigensolver."""

from aevqe._aevqe import (
    CapacityError,
    ConditioningError,
    ConfigError,
    ConvergenceError,
    ParseError,
    PauliSum,
    Problem,
    ZeroNormError,
    build_subspace,
    exact_spectrum,
    jacobi_eig,
    load_pauli_sum_file,
    loss,
    magnetization,
    make_h2_problem,
    make_tfim_problem,
    parity_sector,
    parse_pauli_sum,
    prepare,
    run_experiment,
    solve_eigenstates,
    solve_subspace,
    spsa_minimize,
    symmetry_verify,
    tfim_hamiltonian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
