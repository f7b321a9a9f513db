#pragma once

#include <string>

namespace smx {

/// Where and how to fetch collection matrices. The base URL is overridable
/// because the collection host has moved over the years; the
/// SM_SUITESPARSE_URL environment variable takes precedence over the
/// default, an explicit value over both.
struct FetchOptions {
    std::string base_url;   // empty: env var, then default host
    std::string cache_dir = "suitesparse-cache";
};

std::string default_suitesparse_url();

/// Returns the local path of `{group}/{name}.mtx`, downloading and unpacking
/// `{base_url}/MM/{group}/{name}.tar.gz` on a cache miss. A cache hit never
/// touches the network. Throws NetworkError (unreachable host, bad status)
/// or ParseError (broken archive).
std::string fetch_suitesparse(const std::string& group, const std::string& name,
                              const FetchOptions& options);

}  // namespace smx
