#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lorcost {

/// Base of every error the library throws. Callers that only care about
/// "a model precondition failed" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string token, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what + " '" + token + "'"),
          line_(line), token_(std::move(token)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::size_t line_;
    std::string token_;
};

class NegativeAddress : public Error {
public:
    explicit NegativeAddress(std::size_t line)
        : Error("negative address at line " + std::to_string(line)), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidParam : public Error {
public:
    InvalidParam(std::string param, const std::string& why)
        : Error("invalid parameter '" + param + "': " + why), param_(std::move(param)) {}
    const std::string& param() const noexcept { return param_; }

private:
    std::string param_;
};

class DistanceOutOfDomain : public Error {
public:
    DistanceOutOfDomain(std::size_t index, std::uint64_t distance, std::size_t domain)
        : Error("jump distance " + std::to_string(distance) + " at access " +
                std::to_string(index) + " exceeds locality domain N=" + std::to_string(domain)),
          index_(index), distance_(distance), domain_(domain) {}

    std::size_t index() const noexcept { return index_; }
    std::uint64_t distance() const noexcept { return distance_; }
    std::size_t domain() const noexcept { return domain_; }

private:
    std::size_t index_;
    std::uint64_t distance_;
    std::size_t domain_;
};

class NotQueryType : public Error {
public:
    explicit NotQueryType(std::size_t index)
        : Error("trace is not query-type: access " + std::to_string(index) +
                " moves to a lower address"),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class InvalidShift : public Error {
public:
    InvalidShift(std::uint64_t shift, std::uint64_t block)
        : Error("shift " + std::to_string(shift) + " not in [0, " + std::to_string(block) + ")") {}
};

class TallCacheViolation : public Error {
public:
    TallCacheViolation(std::uint64_t memory, std::uint64_t block)
        : Error("tall cache violated: M=" + std::to_string(memory) + " < B^2=" +
                std::to_string(block * block)) {}
};

class NotConcave : public Error {
public:
    explicit NotConcave(std::size_t index)
        : Error("locality function is not concave at d=" + std::to_string(index) +
                " (second difference is negative)"),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class NotALeaf : public Error {
public:
    explicit NotALeaf(std::uint64_t node)
        : Error("node " + std::to_string(node) + " is not a leaf") {}
};

class NotForward : public Error {
public:
    NotForward() : Error("layout is not a forward embedding") {}
};

class InvalidRank : public Error {
public:
    InvalidRank(std::size_t rank, std::size_t size)
        : Error("rank " + std::to_string(rank) + " out of range for " + std::to_string(size) +
                " values") {}
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t index, std::size_t size)
        : Error("index " + std::to_string(index) + " not in [1, " + std::to_string(size) + "]") {}
};

}  // namespace lorcost
