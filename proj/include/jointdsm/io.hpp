// Readers/writers for the JDSM1 (counts), JDSM1W (weights) and JDSME1
// (embeddings) text containers plus the totals sidecar. Every file ends
// with "#sha256 <hex>" over all preceding bytes; writes go through a
// temp-file rename, and a ".gz" suffix selects gzip output.
#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "jointdsm/eval.hpp"
#include "jointdsm/matrix.hpp"
#include "jointdsm/svd.hpp"
#include "jointdsm/weighting.hpp"

namespace jointdsm {

std::string sha256_hex(std::string_view bytes);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// All savers return the file's sha256 (the content hash used for caching).
std::string save_counts(const CooccurrenceMatrix& m, const std::string& path);
std::string save_weighted(const WeightedMatrix& w, const std::string& path);
std::string save_embedding(const EmbeddingMatrix& e, const std::string& path);
std::string save_totals(const TargetTotals& totals, const std::string& path);

CooccurrenceMatrix load_counts(const std::string& path);
WeightedMatrix load_weighted(const std::string& path);
EmbeddingMatrix load_embedding(const std::string& path);
TargetTotals load_totals(const std::string& path);

using AnyMatrix =
    std::variant<CooccurrenceMatrix, WeightedMatrix, EmbeddingMatrix>;

// Dispatches on the file's magic.
AnyMatrix load_any(const std::string& path);

// The totals sidecar conventionally sits at "<path>.totals".
std::string totals_sidecar_path(const std::string& matrix_path);

}  // namespace jointdsm
