#include "ptf/common.hpp"

#include <cstdio>
#include <cstdlib>

namespace ptf {

namespace {

int read_limit_env(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || parsed < 0 || parsed > 30) return fallback;
    return static_cast<int>(parsed);
}

int g_exact_limit = read_limit_env("PTFSENSE_EXACT_LIMIT", 26);
int g_brute_limit = 12;

}  // namespace

int exact_limit() { return g_exact_limit; }
void set_exact_limit(int n) { g_exact_limit = n; }

int brute_limit() { return g_brute_limit; }
void set_brute_limit(int n) { g_brute_limit = n; }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace ptf
