#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace kage {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Carries the canonical dotted path of the offending field.
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class UnknownAxis : public Error {
public:
    using Error::Error;
};

class EpisodeFinished : public Error {
public:
    using Error::Error;
};

class InvalidAction : public Error {
public:
    using Error::Error;
};

class AssetError : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    using Error::Error;
};

class UnknownPair : public Error {
public:
    using Error::Error;
};

class DegenerateBaseline : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Raised by theory checks; carries the worst deviation and the instance seed.
class VerificationFailed : public Error {
public:
    VerificationFailed(const std::string& message, double worst_deviation, std::uint64_t seed)
        : Error(message), worst_deviation_(worst_deviation), seed_(seed) {}

    double worst_deviation() const noexcept { return worst_deviation_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    double worst_deviation_;
    std::uint64_t seed_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace kage
