#include "subsetcodec/error.hpp"

namespace subsetcodec {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::window: return "window error";
        case ErrorKind::parameter: return "parameter error";
        case ErrorKind::source_exhausted: return "source exhausted";
        case ErrorKind::insufficient_sample: return "insufficient sample";
        case ErrorKind::invalid_sample: return "invalid sample";
        case ErrorKind::inconsistent_sample: return "inconsistent sample";
        case ErrorKind::invalid_threshold: return "invalid threshold";
        case ErrorKind::threshold_search_exhausted: return "threshold search exhausted";
        case ErrorKind::horizon: return "horizon error";
        case ErrorKind::invalid_partition: return "invalid partition";
        case ErrorKind::precondition: return "precondition failed";
        case ErrorKind::budget: return "budget exceeded";
        case ErrorKind::io: return "i/o error";
        case ErrorKind::format: return "format error";
    }
    return "error";
}

}  // namespace subsetcodec
