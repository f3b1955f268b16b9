#pragma once

#include <string>
#include <utility>
#include <vector>

#include "agolomb/report.hpp"

namespace agolomb {

// One parsed OEIS b-file: ordered (index, value) pairs. Gaps in the index
// sequence are allowed; out-of-order indices are not.
struct BFile {
    std::string id;
    std::vector<std::pair<long long, long long>> entries;
};

// Lines "index value" (whitespace separated, optional signs); '#' comments
// and blank lines are skipped. Malformed input throws usage_error with the
// offending line number.
BFile parse_bfile(const std::string& text, const std::string& id = "");
std::string render_bfile(const BFile& bf);

struct CrossCheckResult {
    bool pass = false;
    int offset = 0;        // generated index i matched b-file index i + offset
    long long compared = 0;
    long long mismatch_index = -1;  // generated index of the first mismatch at the best offset
    std::string detail;
};

// Compares a generated (index, value) list against a b-file, trying index
// alignments in [-max_offset, max_offset] and reporting the one that works.
CrossCheckResult cross_check(const std::vector<std::pair<long long, long long>>& generated,
                             const BFile& bfile, int max_offset = 2);

enum class FetchSource { Cache, Network, Fixture, Unavailable };

struct FetchResult {
    FetchSource source = FetchSource::Unavailable;
    std::string text;
    std::string note;
};

// Resolution order: cache directory (env AGOLOMB_OEIS_CACHE, else
// .oeis-cache), then the network when allow_network is set (result cached),
// then committed fixtures under fixture_dir. Network trouble degrades to the
// next source; it never throws.
FetchResult fetch(const std::string& id, bool allow_network, const std::string& fixture_dir = "");

std::string oeis_cache_dir();

}  // namespace agolomb
