#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "regfm/errors.hpp"

namespace regfm {

// Block-size profile (m_1,...,m_r) of the Jordan normal form of E-multiplication.
// Fixes the coordinate layout: flat indices run block by block, positions
// inside a block are 1-based to match the Toeplitz conventions.
struct JordanSpec {
    std::vector<int> sizes;

    JordanSpec() = default;
    explicit JordanSpec(std::vector<int> s) : sizes(std::move(s)) { validate(); }

    void validate() const {
        if (sizes.empty()) throw ConfigError("JordanSpec: need at least one block");
        for (int m : sizes)
            if (m < 1) throw ConfigError("JordanSpec: block sizes must be >= 1");
    }

    int n() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
    int blocks() const { return (int)sizes.size(); }
    bool semisimple() const {
        for (int m : sizes)
            if (m != 1) return false;
        return true;
    }

    int offset(int alpha) const {
        int o = 0;
        for (int b = 0; b < alpha; ++b) o += sizes[b];
        return o;
    }
    // pos is 1-based within the block; returns a 0-based flat index.
    int flat(int alpha, int pos) const { return offset(alpha) + pos - 1; }
    int block_of(int i) const {
        int b = 0;
        while (i >= sizes[b]) i -= sizes[b], ++b;
        return b;
    }
    int pos_of(int i) const {
        int b = 0;
        while (i >= sizes[b]) i -= sizes[b], ++b;
        return i + 1;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(sizes[k]);
        }
        return s;
    }

    static JordanSpec parse(const std::string& csv) {
        std::vector<int> sz;
        std::size_t i = 0;
        while (i < csv.size()) {
            while (i < csv.size() && (csv[i] == ' ' || csv[i] == ',')) ++i;
            if (i >= csv.size()) break;
            int v = 0;
            if (!isdigit((unsigned char)csv[i])) throw ConfigError("bad JordanSpec: '" + csv + "'");
            while (i < csv.size() && isdigit((unsigned char)csv[i])) v = v * 10 + (csv[i++] - '0');
            sz.push_back(v);
        }
        return JordanSpec(sz);
    }
};

}  // namespace regfm
