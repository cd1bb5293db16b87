// SPDX-License-Identifier: Apache-2.0
//! \file nsdi/Errors.hh
#pragma once

#include <stdexcept>
#include <string>

namespace nsdi
{
//! Potential or force evaluated on (or too close to) a Coulomb singularity.
class SingularEvaluation : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Requested quantity does not exist (e.g. saddle at zero field).
class NoSolution : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Predicate never changes sign along the searched interval.
class NoCrossing : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Rejection sampling exhausted its retry budget.
class RejectionOverflow : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Spectrum has an eigenvalue too close to zero to classify.
class DegenerateSpectrum : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Invalid user-supplied parameters.
class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};
}  // namespace nsdi
