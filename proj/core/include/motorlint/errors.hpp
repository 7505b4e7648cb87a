#pragma once

#include <stdexcept>
#include <string>

namespace motorlint {

// Base for every error this library raises on purpose. The CLI maps any
// Error escaping a command to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedBounds : public Error {
public:
    explicit MalformedBounds(const std::string& s)
        : Error("malformed bounds string: \"" + s + "\"") {}
};

class MalformedXml : public Error {
public:
    explicit MalformedXml(const std::string& msg) : Error("malformed xml: " + msg) {}
};

class NoPairsFound : public Error {
public:
    explicit NoPairsFound(const std::string& dir)
        : Error("no screenshot/hierarchy pairs found in " + dir) {}
};

class EmptyCrop : public Error {
public:
    explicit EmptyCrop(const std::string& msg) : Error("empty crop: " + msg) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& msg) : Error("invalid parameters: " + msg) {}
};

class MissingPrediction : public Error {
public:
    explicit MissingPrediction(const std::string& msg)
        : Error("labels reference units absent from the capture set: " + msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace motorlint
