#include "smx/fetch.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "smx/errors.hpp"

namespace smx {

namespace fs = std::filesystem;

namespace {

std::string gunzip(const std::string& compressed) {
    z_stream strm{};
    // 15 + 32: zlib or gzip wrapper, auto-detected
    if (inflateInit2(&strm, 15 + 32) != Z_OK) {
        throw Error(Errc::parse_error, "fetch: inflateInit failed");
    }
    std::string out;
    std::vector<unsigned char> buf(1 << 16);
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    strm.avail_in = static_cast<uInt>(compressed.size());
    int rc = Z_OK;
    do {
        strm.next_out = buf.data();
        strm.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&strm, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&strm);
            throw Error(Errc::parse_error, "fetch: corrupt gzip stream");
        }
        out.append(reinterpret_cast<char*>(buf.data()), buf.size() - strm.avail_out);
    } while (rc != Z_STREAM_END);
    inflateEnd(&strm);
    return out;
}

std::uint64_t parse_octal(const char* field, std::size_t len) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < len && field[i]; ++i) {
        if (field[i] == ' ') continue;
        if (field[i] < '0' || field[i] > '7') break;
        v = v * 8 + static_cast<std::uint64_t>(field[i] - '0');
    }
    return v;
}

/// Extracts the member whose path ends with `suffix` from a ustar archive.
std::string untar_member(const std::string& tar, const std::string& suffix) {
    const std::string nested = "/" + suffix;
    auto matches = [&](const std::string& path) {
        if (path == suffix) return true;
        return path.size() > nested.size() &&
               path.compare(path.size() - nested.size(), nested.size(), nested) == 0;
    };

    std::size_t off = 0;
    while (off + 512 <= tar.size()) {
        const char* hdr = tar.data() + off;
        if (hdr[0] == '\0') break;  // end-of-archive blocks

        char name[257] = {0};
        // ustar prefix field extends the 100-byte name
        std::memcpy(name, hdr + 345, 155);
        std::size_t pos = std::strlen(name);
        if (pos > 0) name[pos++] = '/';
        std::memcpy(name + pos, hdr, 100);

        const std::uint64_t size = parse_octal(hdr + 124, 12);
        const char type = hdr[156];
        off += 512;
        if ((type == '0' || type == '\0') && matches(name)) {
            if (off + size > tar.size()) {
                throw Error(Errc::parse_error, "fetch: truncated tar member");
            }
            return tar.substr(off, size);
        }
        off += (size + 511) / 512 * 512;
    }
    throw Error(Errc::parse_error, "fetch: archive does not contain " + suffix);
}

}  // namespace

std::string default_suitesparse_url() {
    if (const char* env = std::getenv("SM_SUITESPARSE_URL"); env && *env) return env;
    return "https://sparse.tamu.edu";
}

std::string fetch_suitesparse(const std::string& group, const std::string& name,
                              const FetchOptions& options) {
    const fs::path cache_dir = fs::path(options.cache_dir) / group;
    const fs::path target = cache_dir / (name + ".mtx");
    if (fs::exists(target)) return target.string();

    const std::string base = options.base_url.empty() ? default_suitesparse_url()
                                                      : options.base_url;
    const std::string remote = "/MM/" + group + "/" + name + ".tar.gz";

    httplib::Client client(base);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    const httplib::Result res = client.Get(remote);
    if (!res) {
        throw Error(Errc::network_error,
                    "fetch: cannot reach " + base + " (" + httplib::to_string(res.error()) + ")");
    }
    if (res->status != 200) {
        throw Error(Errc::network_error, "fetch: " + base + remote + " returned status " +
                                             std::to_string(res->status));
    }

    const std::string tar = gunzip(res->body);
    const std::string mtx = untar_member(tar, name + ".mtx");

    fs::create_directories(cache_dir);
    const fs::path tmp = target.string() + ".part";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(Errc::io_error, "fetch: cannot write " + tmp.string());
        out.write(mtx.data(), static_cast<std::streamsize>(mtx.size()));
    }
    fs::rename(tmp, target);
    return target.string();
}

}  // namespace smx
