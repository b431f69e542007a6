#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qseries {

/// Root of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inverting a series whose constant term is not +1 or -1.
class not_a_unit : public error {
public:
    explicit not_a_unit(const std::string& what) : error("NotAUnit: " + what) {}
};

/// Reading a coefficient beyond the truncation order.
class out_of_range : public error {
public:
    explicit out_of_range(const std::string& what) : error("OutOfRange: " + what) {}
};

/// A quotient that would need negative powers of q.
class negative_valuation : public error {
public:
    explicit negative_valuation(const std::string& what) : error("NegativeValuation: " + what) {}
};

/// A quotient whose coefficients are not integers.
class non_exact_division : public error {
public:
    explicit non_exact_division(const std::string& what) : error("NonExactDivision: " + what) {}
};

class not_prime : public error {
public:
    explicit not_prime(const std::string& what) : error("NotPrime: " + what) {}
};

/// Well-formed syntax carrying an argument outside its domain.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error("DomainError: " + what) {}
};

/// DSL syntax error at a byte offset.
class syntax_error : public error {
public:
    syntax_error(std::size_t offset, std::string expected, std::string found)
        : error("SyntaxError at offset " + std::to_string(offset) + ": expected " + expected +
                ", found " + found),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// Corpus file error, tagged with a 1-based line number.
class corpus_error : public error {
public:
    corpus_error(std::size_t line, const std::string& what)
        : error("corpus line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace qseries
