#ifndef QZETA_CLI_HPP
#define QZETA_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qzeta/linforms.hpp"

namespace qzeta::cli {

using json = nlohmann::json;

/// Runs one `qzeta` invocation. Exit codes: 0 success, 1 a verification
/// check failed, 2 invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Cache directory from the flag, else $QZETA_CACHE, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag);

/// Persistent JSON store; writes go to a temporary file that is renamed
/// into place, so readers never see partial files.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::optional<json> load(const std::string& section, const std::string& key) const;
    void store(const std::string& section, const std::string& key, const json& value) const;
    std::filesystem::path path(const std::string& section, const std::string& key) const;

private:
    std::filesystem::path dir_;
};

/// Lossless encodings; big integers are strings.
json to_json(const PPoly& p);
json to_json(const RatFunc& f);
json to_json(const LinearForm& f);
PPoly ppoly_from_json(const json& j);
RatFunc ratfunc_from_json(const json& j);
LinearForm linform_from_json(const json& j);

/// Form for `params`, read from the cache when present (and re-certified at
/// p = 2), otherwise computed and stored.
LinearForm cached_linform(const Params& params, const DiskCache* cache);

}  // namespace qzeta::cli

#endif  // QZETA_CLI_HPP
