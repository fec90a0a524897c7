#pragma once

#include <stdexcept>
#include <string>

namespace sqforms {

// Base of every failure thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on the mathematical domain was violated: zero modulus,
// composite number where a prime is required, mismatched forms, parity.
class domain_error : public error {
public:
    using error::error;
};

// The input is valid but exceeds the configured work budget
// (factorization effort, residue-table size, search bound).
class budget_error : public error {
public:
    using error::error;
};

// A seed multiple that does not satisfy its own invariants.
class seed_error : public error {
public:
    using error::error;
};

// Descent could not make progress. Only reachable through best-effort
// runs on composite moduli; the prime path proves a strict decrease.
class descent_error : public error {
public:
    using error::error;
};

// An exhaustive search confirmed that no solution of the requested
// kind exists.
class no_solution_error : public error {
public:
    using error::error;
};

// A trace document that does not match the schema.
class parse_error : public error {
public:
    using error::error;
};

} // namespace sqforms
