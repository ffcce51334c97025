// SPDX-License-Identifier: Apache-2.0
//
// ris-coupling: RIS channel models with mutual coupling and decoupling networks
// Copyright (C) 2026 The ris-coupling authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_TYPES_HPP
#define RIS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ris
{
    using cplx = std::complex<double>;
    using RealMatrix = Eigen::MatrixXd;
    using RealVector = Eigen::VectorXd;
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;

    inline constexpr cplx j_unit{0.0, 1.0};

    // Symmetric matrix whose smallest eigenvalue falls below the conditioning gate
    class IllConditioned : public std::runtime_error
    {
    public:
        IllConditioned(const std::string &what, double min_eig, double max_eig)
            : std::runtime_error(what), min_eigenvalue(min_eig), max_eigenvalue(max_eig) {}
        double min_eigenvalue;
        double max_eigenvalue;
    };

    // Linear solve with a numerically singular system matrix
    class SingularNetwork : public std::runtime_error
    {
    public:
        SingularNetwork(const std::string &what, double rcond)
            : std::runtime_error(what), reciprocal_condition(rcond) {}
        double reciprocal_condition;
    };

    // Argument outside the mathematical domain of an operation
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Eigenvalues below eig_floor * max eigenvalue fail the conditioning gate.
    inline constexpr double default_eig_floor = 1e-12;

    // Linear solves fail below this reciprocal condition estimate.
    inline constexpr double singular_rcond = 1e-13;
}

#endif
