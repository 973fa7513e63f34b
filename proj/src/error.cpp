#include "mgpf/error.hpp"

namespace mgpf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid dimension";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::InvalidState: return "invalid state";
    case ErrorKind::SamplingFailure: return "sampling failure";
    case ErrorKind::DegenerateFoci: return "degenerate foci";
    case ErrorKind::NoActiveEdges: return "no active edges";
    case ErrorKind::NotSpanning: return "not spanning";
    case ErrorKind::UnknownNode: return "unknown node";
    case ErrorKind::SizeLimit: return "size limit";
    case ErrorKind::InvalidTerminals: return "invalid terminals";
    case ErrorKind::GenerationFailure: return "generation failure";
    case ErrorKind::Config: return "config";
    case ErrorKind::SchemaMismatch: return "schema mismatch";
    case ErrorKind::UnsupportedDimension: return "unsupported dimension";
  }
  return "unknown";
}

}  // namespace mgpf
