#include "agolomb/oeis.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "agolomb/qfield.hpp"

#ifdef AGOLOMB_HAVE_HTTPLIB
#include <httplib.h>
#endif

namespace agolomb {

BFile parse_bfile(const std::string& text, const std::string& id) {
    BFile bf;
    bf.id = id;
    std::istringstream in(text);
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size() || line[i] == '#') continue;
        std::istringstream fields(line);
        long long index, value;
        if (!(fields >> index >> value))
            throw usage_error("malformed b-file line " + std::to_string(line_no) + ": \"" + line +
                              "\"");
        std::string trailing;
        if (fields >> trailing && !trailing.empty() && trailing[0] != '#')
            throw usage_error("trailing junk on b-file line " + std::to_string(line_no));
        if (!bf.entries.empty() && index <= bf.entries.back().first)
            throw usage_error("non-increasing index on b-file line " + std::to_string(line_no));
        bf.entries.emplace_back(index, value);
    }
    return bf;
}

std::string render_bfile(const BFile& bf) {
    std::ostringstream out;
    for (const auto& [index, value] : bf.entries) out << index << ' ' << value << '\n';
    return out.str();
}

CrossCheckResult cross_check(const std::vector<std::pair<long long, long long>>& generated,
                             const BFile& bfile, int max_offset) {
    CrossCheckResult best;
    std::map<long long, long long> lookup(bfile.entries.begin(), bfile.entries.end());
    for (int offset = -max_offset; offset <= max_offset; ++offset) {
        long long compared = 0;
        long long mismatch = -1;
        for (const auto& [index, value] : generated) {
            auto it = lookup.find(index + offset);
            if (it == lookup.end()) continue;
            ++compared;
            if (it->second != value) {
                mismatch = index;
                break;
            }
        }
        if (compared > 0 && mismatch == -1) {
            best.pass = true;
            best.offset = offset;
            best.compared = compared;
            best.detail = "match (offset " + std::to_string(offset) + ", " +
                          std::to_string(compared) + " values)";
            return best;
        }
        if (compared > best.compared) {
            best.compared = compared;
            best.offset = offset;
            best.mismatch_index = mismatch;
        }
    }
    best.detail = best.compared == 0
                      ? "no overlapping indices at any tried offset"
                      : "mismatch at generated index " + std::to_string(best.mismatch_index) +
                            " (best offset " + std::to_string(best.offset) + ")";
    return best;
}

std::string oeis_cache_dir() {
    if (const char* env = std::getenv("AGOLOMB_OEIS_CACHE")) return env;
    return ".oeis-cache";
}

namespace {

std::string bfile_name(const std::string& id) {
    // A001333 -> b001333.txt
    return "b" + id.substr(1) + ".txt";
}

bool read_file(const std::filesystem::path& path, std::string* out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
    return true;
}

}  // namespace

FetchResult fetch(const std::string& id, bool allow_network, const std::string& fixture_dir) {
    FetchResult res;
    if (id.size() < 2 || id[0] != 'A')
        throw usage_error("sequence id must look like A001333, got \"" + id + "\"");
    std::filesystem::path cached = std::filesystem::path(oeis_cache_dir()) / bfile_name(id);
    if (read_file(cached, &res.text)) {
        res.source = FetchSource::Cache;
        return res;
    }
    if (allow_network) {
#ifdef AGOLOMB_HAVE_HTTPLIB
        const std::string path = "/" + id + "/" + bfile_name(id);
        auto attempt = [&](auto& client) {
            client.set_connection_timeout(10);
            auto r = client.Get(path);
            if (r && r->status == 200) {
                res.text = r->body;
                res.source = FetchSource::Network;
                std::error_code ec;
                std::filesystem::create_directories(cached.parent_path(), ec);
                std::ofstream out(cached, std::ios::binary);
                out << res.text;
                return true;
            }
            return false;
        };
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        {
            httplib::SSLClient ssl("oeis.org", 443);
            if (attempt(ssl)) return res;
        }
#endif
        {
            httplib::Client plain("oeis.org", 80);
            if (attempt(plain)) return res;
        }
        res.note = "network fetch failed; ";
#else
        res.note = "built without HTTP support; ";
#endif
    }
    if (!fixture_dir.empty() &&
        read_file(std::filesystem::path(fixture_dir) / bfile_name(id), &res.text)) {
        res.source = FetchSource::Fixture;
        return res;
    }
    res.source = FetchSource::Unavailable;
    res.note += "no cache entry" + std::string(fixture_dir.empty() ? "" : " or fixture") +
                " for " + id;
    return res;
}

}  // namespace agolomb
