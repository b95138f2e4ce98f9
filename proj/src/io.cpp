#include "specvol/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace specvol {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed number in field '" + field + "': '" + text + "'");
    }
}

std::vector<double> parse_number_list(const std::string& field, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        const auto t = trim(item);
        if (t.empty()) throw std::invalid_argument("empty entry in field '" + field + "'");
        out.push_back(parse_number(field, t));
    }
    return out;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string format_list(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i > 0) out += ",";
        out += format_number(vs[i]);
    }
    return out;
}

}  // namespace

FunctionSpec parse_function_spec(const std::string& spec) {
    const auto pos = spec.find(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("function spec '" + spec +
                                    "' lacks a kind prefix (const:/cos:/jump:/file:)");
    const std::string kind = spec.substr(0, pos);
    const std::string body = spec.substr(pos + 1);
    if (kind == "const") {
        return FunctionSpec::constant(parse_number("const", body));
    }
    if (kind == "cos") {
        return FunctionSpec::cosine(CosineSeries(parse_number_list("cos", body)));
    }
    if (kind == "jump") {
        const auto v = parse_number_list("jump", body);
        if (v.size() != 3)
            throw std::invalid_argument("field 'jump' needs low,high,point (got " +
                                        std::to_string(v.size()) + " values)");
        return FunctionSpec::jump(v[0], v[1], v[2]);
    }
    if (kind == "file") {
        return FunctionSpec::tabulated(read_observation_column(body));
    }
    throw std::invalid_argument("unknown function kind '" + kind + "'");
}

std::string function_spec_flag(const FunctionSpec& f) {
    if (const auto* c = f.get_if<FunctionSpec::Constant>()) {
        return "const:" + format_number(c->value);
    }
    if (const auto* s = f.get_if<FunctionSpec::Cosine>()) {
        return "cos:" + format_list(s->series.coefficients());
    }
    if (const auto* j = f.get_if<FunctionSpec::Jump>()) {
        return "jump:" + format_number(j->level_low) + "," + format_number(j->level_high) + "," +
               format_number(j->jump_point);
    }
    const auto* t = f.get_if<FunctionSpec::Tabulated>();
    return "tabulated:" + format_list(t->values);
}

std::string serialize_function_spec(const FunctionSpec& f) {
    std::ostringstream os;
    os << "kind=" << f.kind_name() << "\n";
    if (const auto* c = f.get_if<FunctionSpec::Constant>()) {
        os << "value=" << format_number(c->value) << "\n";
    } else if (const auto* s = f.get_if<FunctionSpec::Cosine>()) {
        os << "theta=" << format_list(s->series.coefficients()) << "\n";
    } else if (const auto* j = f.get_if<FunctionSpec::Jump>()) {
        os << "low=" << format_number(j->level_low) << "\n";
        os << "high=" << format_number(j->level_high) << "\n";
        os << "point=" << format_number(j->jump_point) << "\n";
    } else if (const auto* t = f.get_if<FunctionSpec::Tabulated>()) {
        os << "values=" << format_list(t->values) << "\n";
    }
    return os.str();
}

FunctionSpec parse_function_spec_block(const std::string& block) {
    std::istringstream is(block);
    std::string line;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("function block line lacks '=': '" + line + "'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "kind") {
            kind = value;
        } else {
            fields.emplace_back(key, value);
        }
    }
    auto field = [&fields](const std::string& name) -> const std::string& {
        for (const auto& [k, v] : fields) {
            if (k == name) return v;
        }
        throw std::invalid_argument("function block missing field '" + name + "'");
    };
    if (kind == "constant") return FunctionSpec::constant(parse_number("value", field("value")));
    if (kind == "cosine")
        return FunctionSpec::cosine(CosineSeries(parse_number_list("theta", field("theta"))));
    if (kind == "jump")
        return FunctionSpec::jump(parse_number("low", field("low")),
                                  parse_number("high", field("high")),
                                  parse_number("point", field("point")));
    if (kind == "tabulated")
        return FunctionSpec::tabulated(parse_number_list("values", field("values")));
    throw std::invalid_argument("function block has unknown kind '" + kind + "'");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return columns[i];
    }
    throw std::invalid_argument("CSV lacks column '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column count mismatch");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    os << std::setprecision(17);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) os << ",";
        os << header[i];
    }
    os << "\n";
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns) {
        if (col.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) os << ",";
            os << columns[c][r];
        }
        os << "\n";
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("'" + path.string() + "' is empty");
    CsvTable table;
    for (const auto& h : split(trim(line), ',')) table.header.push_back(trim(h));
    table.columns.resize(table.header.size());
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty()) continue;
        const auto cells = split(t, ',');
        if (cells.size() != table.header.size())
            throw std::runtime_error("'" + path.string() + "' line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(table.header.size()) +
                                     " cells, got " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            table.columns[c].push_back(
                parse_number(table.header[c] + "@" + std::to_string(lineno), trim(cells[c])));
        }
    }
    return table;
}

void write_observation_csv(const std::filesystem::path& path, const ObservationSeries& obs) {
    std::vector<double> idx(static_cast<std::size_t>(obs.n));
    std::vector<double> t(static_cast<std::size_t>(obs.n));
    for (int i = 1; i <= obs.n; ++i) {
        idx[static_cast<std::size_t>(i) - 1] = i;
        t[static_cast<std::size_t>(i) - 1] = static_cast<double>(i) / obs.n;
    }
    write_csv(path, {"i", "t", "y"}, {idx, t, obs.y});
}

std::vector<double> read_observation_column(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    if (table.columns.empty() || table.rows() == 0)
        throw std::runtime_error("'" + path.string() + "' holds no data rows");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == "y") return table.columns[i];
    }
    return table.columns.back();
}

void write_cosine_series_csv(const std::filesystem::path& path, const CosineSeries& s) {
    std::vector<double> k(s.coefficients().size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i);
    write_csv(path, {"k", "theta"}, {k, s.coefficients()});
}

CosineSeries read_cosine_series_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    return CosineSeries(table.column("theta"));
}

void write_key_value_file(const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    for (const auto& [k, v] : entries) os << k << "=" << v << "\n";
}

}  // namespace specvol
