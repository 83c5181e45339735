#pragma once

#include <stdexcept>
#include <string>

namespace kquant {

/// Precondition violations (t <= 0, z = 0, point outside chart overlap, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

/// Pochhammer factor (b)_s vanished inside a truncated Kummer sum.
class degenerate_parameter_error : public domain_error {
public:
    explicit degenerate_parameter_error(const std::string& msg) : domain_error(msg) {}
};

/// Multi-index does not describe a section (total degree below the vanishing order).
class not_a_section_error : public domain_error {
public:
    explicit not_a_section_error(const std::string& msg) : domain_error(msg) {}
};

/// No closed-form norm exists for the requested potential.
class no_closed_form_error : public std::runtime_error {
public:
    explicit no_closed_form_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Semi-infinite integral failed to exhibit decay within the doubling budget.
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Finite-difference oracle step underflow / breakdown.
class oracle_failure_error : public std::runtime_error {
public:
    explicit oracle_failure_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested tolerance not met within the truncation budget.
/// Carries the partial result through value/terms/tail fields.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& msg, double value, int terms, double tail)
        : std::runtime_error(msg), partial_value(value), terms_used(terms), tail_bound(tail) {}
    double partial_value;
    int terms_used;
    double tail_bound;
};

} // namespace kquant
