// Error taxonomy shared by all modules. CLI exit codes: 1 usage, 2 data,
// 3 numeric.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jointdsm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- data errors -----------------------------------------------------------

struct MalformedBlock : Error {
  MalformedBlock(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

struct EmptyDataset : Error {
  using Error::Error;
};

struct EmptyMatrixError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct MagicMismatch : Error {
  using Error::Error;
};

struct ChecksumMismatch : Error {
  using Error::Error;
};

struct TruncatedFile : Error {
  using Error::Error;
};

struct InsufficientCoverage : Error {
  using Error::Error;
};

// --- numeric errors --------------------------------------------------------

struct RankTooLarge : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct SizeExceeded : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct DegenerateInput : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// Wraps a module error with the pipeline stage it occurred in. `code`
// carries the exit-code class of the underlying error.
struct PipelineError : Error {
  PipelineError(const std::string& stage_name, const std::string& what,
                int exit_code = 2)
      : Error("[stage " + stage_name + "] " + what),
        stage(stage_name),
        code(exit_code) {}
  std::string stage;
  int code = 2;
};

inline int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const RankTooLarge*>(&e) ||
      dynamic_cast<const ConvergenceFailure*>(&e) ||
      dynamic_cast<const SizeExceeded*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const DegenerateInput*>(&e) ||
      dynamic_cast<const DomainError*>(&e))
    return 3;
  if (auto* p = dynamic_cast<const PipelineError*>(&e)) return p->code;
  return 2;
}

}  // namespace jointdsm
