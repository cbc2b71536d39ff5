// Copyright 2026 The cslheat Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#include "cslheat/sde.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "cslheat/config.hpp"
#include "cslheat/errors.hpp"

namespace cslheat {

void LinearSde::validate() const {
    const int d = dim();
    if (d < 1) throw std::invalid_argument("linear sde: dimension must be >= 1");
    if (A.cols() != d) throw std::invalid_argument("linear sde: A must be square");
    if (a.size() != d) throw std::invalid_argument("linear sde: a must have length d");
    if (b.size() != B.size())
        throw std::invalid_argument("linear sde: B and b must have the same driver count");
    for (const auto& Bj : B)
        if (Bj.rows() != d || Bj.cols() != d)
            throw std::invalid_argument("linear sde: every B^j must be d x d");
    for (const auto& bj : b)
        if (bj.size() != d) throw std::invalid_argument("linear sde: every b_j must have length d");
}

namespace {

LinearSde drift_corrected(const LinearSde& sde, double sign) {
    sde.validate();
    LinearSde out = sde;
    for (int j = 0; j < sde.drivers(); ++j) {
        out.A += sign * 0.5 * sde.B[static_cast<std::size_t>(j)] * sde.B[static_cast<std::size_t>(j)];
        out.a += sign * 0.5 * sde.B[static_cast<std::size_t>(j)] * sde.b[static_cast<std::size_t>(j)];
    }
    return out;
}

Eigen::MatrixXd parse_matrix(const std::string& text, int rows, int cols, const std::string& what) {
    Eigen::MatrixXd m(rows, cols);
    std::vector<std::string> row_strs;
    std::size_t start = 0;
    while (true) {
        const auto semi = text.find(';', start);
        row_strs.push_back(text.substr(start, semi == std::string::npos ? std::string::npos
                                                                        : semi - start));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (static_cast<int>(row_strs.size()) != rows)
        throw usage_error(what + ": expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(row_strs.size()));
    for (int r = 0; r < rows; ++r) {
        const auto toks = split_ws(row_strs[static_cast<std::size_t>(r)]);
        if (static_cast<int>(toks.size()) != cols)
            throw usage_error(what + " row " + std::to_string(r + 1) + ": expected " +
                              std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m(r, c) = parse_double(toks[static_cast<std::size_t>(c)], what);
    }
    return m;
}

} // namespace

LinearSde strat_to_ito(const LinearSde& sde) { return drift_corrected(sde, +1.0); }
LinearSde ito_to_strat(const LinearSde& sde) { return drift_corrected(sde, -1.0); }

LinearSde read_linear_sde(std::istream& in) {
    auto sections = parse_config(in);
    if (sections.size() != 1 || !sections.front().name.empty())
        throw usage_error("sde file: expected a flat key-value file without sections");
    SectionReader r(sections.front());
    const int d = static_cast<int>(r.require_double("d"));
    const int m = static_cast<int>(r.require_double("m"));
    if (d < 1 || m < 0) throw usage_error("sde file: need d >= 1 and m >= 0");

    LinearSde sde;
    sde.A = parse_matrix(r.require("A"), d, d, "A");
    sde.a = parse_matrix(r.require("a"), 1, d, "a").transpose();
    for (int j = 1; j <= m; ++j) {
        sde.B.push_back(parse_matrix(r.require("B" + std::to_string(j)), d, d,
                                     "B" + std::to_string(j)));
        sde.b.push_back(parse_matrix(r.require("b" + std::to_string(j)), 1, d,
                                     "b" + std::to_string(j))
                            .transpose());
    }
    r.finish();
    sde.validate();
    return sde;
}

void write_linear_sde(std::ostream& out, const LinearSde& sde) {
    sde.validate();
    auto row = [&out](const Eigen::MatrixXd& m, int r) {
        for (int c = 0; c < m.cols(); ++c) out << (c ? " " : "") << sci(m(r, c));
    };
    auto matrix = [&](const char* name, const Eigen::MatrixXd& m) {
        out << name << " = ";
        for (int r = 0; r < m.rows(); ++r) {
            if (r) out << " ; ";
            row(m, r);
        }
        out << "\n";
    };
    out << "d = " << sde.dim() << "\n";
    out << "m = " << sde.drivers() << "\n";
    matrix("A", sde.A);
    matrix("a", sde.a.transpose());
    for (int j = 0; j < sde.drivers(); ++j) {
        matrix(("B" + std::to_string(j + 1)).c_str(), sde.B[static_cast<std::size_t>(j)]);
        matrix(("b" + std::to_string(j + 1)).c_str(),
               sde.b[static_cast<std::size_t>(j)].transpose());
    }
}

} // namespace cslheat
