#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/json_io.hpp"

namespace spinctrl {

namespace {

std::string full_precision(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << full_precision(m(i, j));
        }
        out << '\n';
    }
}

Eigen::MatrixXd read_matrix_text(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double x;
        while (ls >> x) row.push_back(x);
        if (!ls.eof()) throw std::invalid_argument("matrix text: unparsable entry in row " +
                                                   std::to_string(rows.size() + 1));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::invalid_argument("matrix text: ragged row " + std::to_string(rows.size() + 1));
        }
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& doc) {
    if (!doc.is_array()) throw std::invalid_argument("matrix: expected array of rows");
    const std::size_t cols = doc.empty() ? 0 : doc[0].size();
    Eigen::MatrixXd m(doc.size(), cols);
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_array() || doc[i].size() != cols) {
            throw std::invalid_argument("matrix: ragged row " + std::to_string(i));
        }
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = doc[i][j].get<double>();
    }
    return m;
}

}  // namespace spinctrl
