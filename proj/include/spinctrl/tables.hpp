#pragma once

#include <string>
#include <vector>

#include "spinctrl/fixtures.hpp"
#include "spinctrl/json_io.hpp"
#include "spinctrl/lie.hpp"

namespace spinctrl {

enum class TableId { sym, xx_branch, heisen_branch, two_excitation };

TableId parse_table_id(const std::string& text);
std::string to_string(TableId id);

struct TableRow {
    std::string key;  // e.g. "N=8 k=2" or "(6,4,3)"
    json computed;
    json reference;
    json matches;     // field -> bool
    bool match = false;
    json notes = json::object();
};

struct TableReport {
    TableId id = TableId::sym;
    std::vector<TableRow> rows;
    std::vector<std::string> mismatches;  // keys of rows with match == false
};

struct TableOptions {
    ArithmeticMode mode = ArithmeticMode::floating;
    double tolerance = 1e-9;
    unsigned threads = 0;  // 0: hardware concurrency
};

TableReport reproduce_table(TableId id, const ReferenceValues& ref, const TableOptions& options = {});

json table_to_json(const TableReport& report);
std::string table_to_text(const TableReport& report);

}  // namespace spinctrl
