#include "fracblowup/report.hpp"

#include <filesystem>
#include <fstream>

#include "fracblowup/errors.hpp"

namespace fracblowup {

uint64_t config_hash(const std::string& canonical) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw DataError("cannot create directory " + path + ": " + ec.message());
}

}  // namespace fracblowup
