// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace skyrelay {

/// Input outside an operation's mathematical domain (h_a <= h_g, d <= 0, P <= 0, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent configuration document.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace skyrelay
