#include "aiet/mapfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace aiet {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

struct LineParser {
    const MapFile& file;
    long line;
    long base_col;  // column of the right-hand side within the source line

    [[noreturn]] void fail(long col_offset, const std::string& msg) const {
        throw ParseError(line, base_col + col_offset, msg);
    }

    Scalar scalar(const std::string& text, long col) const {
        try {
            return Scalar::parse(text);
        } catch (const ScalarParseError& e) {
            fail(col, e.what());
        }
    }

    long integer(const std::string& text, long col) const {
        try {
            size_t used = 0;
            long v = std::stol(text, &used);
            if (used != text.size()) fail(col, "trailing characters after integer");
            return v;
        } catch (const std::invalid_argument&) {
            fail(col, "expected an integer");
        } catch (const std::out_of_range&) {
            fail(col, "integer out of range");
        }
    }

    const Aiet& named(const std::string& name, long col) const {
        auto it = file.maps.find(name);
        if (it == file.maps.end()) fail(col, "unknown map name '" + name + "'");
        return it->second;
    }

    Aiet construct(const std::string& rhs) const {
        size_t open = rhs.find('(');
        if (open == std::string::npos || rhs.back() != ')')
            fail(0, "expected constructor call 'name(args)'");
        std::string ctor = trim(rhs.substr(0, open));
        std::string body = rhs.substr(open + 1, rhs.size() - open - 2);
        long bcol = static_cast<long>(open) + 1;

        auto args = split(body, ',');
        if (args.size() == 1 && args[0].empty()) args.clear();
        auto want = [&](size_t n) {
            if (args.size() != n)
                fail(bcol, ctor + " takes " + std::to_string(n) + " argument(s), got " +
                               std::to_string(args.size()));
        };

        try {
            if (ctor == "identity") {
                want(0);
                return Aiet::identity();
            }
            if (ctor == "rotation") {
                want(1);
                return Aiet::rotation(scalar(args[0], bcol));
            }
            if (ctor == "rrot") {
                want(3);
                return Aiet::restricted_rotation(scalar(args[0], bcol), scalar(args[1], bcol),
                                                 scalar(args[2], bcol));
            }
            if (ctor == "bmap") {
                want(2);
                return Aiet::two_slope_map(scalar(args[0], bcol), scalar(args[1], bcol));
            }
            if (ctor == "iet") {
                auto parts = split(body, ';');
                if (parts.size() != 2) fail(bcol, "iet takes 'perm ; lengths'");
                std::vector<int> perm;
                std::istringstream ps(parts[0]);
                std::string tok;
                while (ps >> tok) perm.push_back(static_cast<int>(integer(tok, bcol)));
                std::vector<Scalar> lengths;
                std::istringstream ls(parts[1]);
                while (ls >> tok) lengths.push_back(scalar(tok, bcol));
                return Aiet::iet_from_lengths(perm, lengths);
            }
            if (ctor == "pieces") {
                std::vector<Piece> pieces;
                for (const std::string& row : split(body, ';')) {
                    auto cells = split(row, '|');
                    if (cells.size() != 3) fail(bcol, "each piece is 'left | slope | intercept'");
                    pieces.push_back({scalar(cells[0], bcol), scalar(cells[1], bcol),
                                      scalar(cells[2], bcol)});
                }
                return Aiet::from_pieces(pieces);
            }
            if (ctor == "compose") {
                want(2);
                return compose(named(args[0], bcol), named(args[1], bcol));
            }
            if (ctor == "inverse") {
                want(1);
                return named(args[0], bcol).inverse();
            }
            if (ctor == "power") {
                want(2);
                return power(named(args[0], bcol), integer(args[1], bcol));
            }
            if (ctor == "conjugate") {
                want(2);
                return conjugate(named(args[0], bcol), named(args[1], bcol));
            }
        } catch (const ValidationError& e) {
            fail(bcol, e.what());
        }
        fail(0, "unknown constructor '" + ctor + "'");
    }
};

}  // namespace

const Aiet& MapFile::map(const std::string& name) const {
    auto it = maps.find(name);
    if (it != maps.end()) return it->second;
    std::string avail;
    for (const std::string& n : map_names) avail += (avail.empty() ? "" : ", ") + n;
    throw ValidationError("no map named '" + name + "'; available: " +
                          (avail.empty() ? "(none)" : avail));
}

std::vector<std::string> MapFile::group_members(const std::string& name) const {
    auto it = groups.find(name);
    if (it != groups.end()) return it->second;
    std::string avail;
    for (const std::string& n : group_names) avail += (avail.empty() ? "" : ", ") + n;
    throw ValidationError("no group named '" + name + "'; available: " +
                          (avail.empty() ? "(none)" : avail));
}

GeneratingSet MapFile::group(const std::string& name) const {
    GeneratingSet gens;
    for (const std::string& m : group_members(name)) gens.generators.push_back(map(m));
    return gens;
}

MapFile parse_map_file(const std::string& text) {
    MapFile file;
    std::istringstream in(text);
    std::string raw;
    long lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        if (trim(line).empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, 1, "expected 'map NAME = ...' or 'group NAME = ...'");
        std::string lhs = trim(line.substr(0, eq));
        std::string rhs = trim(line.substr(eq + 1));
        if (rhs.empty()) throw ParseError(lineno, static_cast<long>(eq) + 2, "empty right-hand side");
        long rhs_col = static_cast<long>(line.find_first_not_of(" \t", eq + 1)) + 1;

        std::istringstream ls(lhs);
        std::string kind, name, extra;
        ls >> kind >> name >> extra;
        if (!extra.empty() || (kind != "map" && kind != "group"))
            throw ParseError(lineno, 1, "expected 'map NAME' or 'group NAME' before '='");
        if (!valid_name(name)) throw ParseError(lineno, 1, "invalid name '" + name + "'");
        if (file.maps.count(name) || file.groups.count(name))
            throw ParseError(lineno, 1, "duplicate name '" + name + "'");

        if (kind == "map") {
            LineParser lp{file, lineno, rhs_col};
            file.maps.emplace(name, lp.construct(rhs));
            file.map_names.push_back(name);
        } else {
            std::vector<std::string> members = split(rhs, ',');
            if (members.size() == 1 && members[0].empty())
                throw ParseError(lineno, rhs_col, "empty group");
            for (const std::string& m : members)
                if (!file.maps.count(m))
                    throw ParseError(lineno, rhs_col, "unknown map name '" + m + "' in group");
            file.groups.emplace(name, std::move(members));
            file.group_names.push_back(name);
        }
    }
    return file;
}

MapFile load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open map file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_map_file(ss.str());
}

}  // namespace aiet
