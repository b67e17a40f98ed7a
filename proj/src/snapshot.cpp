#include "fsi/snapshot.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fsi {

namespace {

void write_values(std::ostream& out, const std::vector<double>& values, int per_row) {
    char buf[32];
    for (size_t n = 0; n < values.size(); ++n) {
        snprintf(buf, sizeof(buf), "%.17g", values[n]);
        out << buf;
        out << (((n + 1) % static_cast<size_t>(per_row) == 0) ? '\n' : ' ');
    }
}

}  // namespace

void write_snapshot(const CoupledState& state, const std::string& path) {
    const Grid& g = state.sigma.grid;
    std::ostringstream out;
    char buf[64];
    out << "# fsisim snapshot\n";
    snprintf(buf, sizeof(buf), "%.17g", state.t);
    out << "# t = " << buf << "\n";
    out << "# Nx = " << g.nx << "\n";
    out << "# Nz = " << g.nz << "\n";
    snprintf(buf, sizeof(buf), "%.17g", g.length);
    out << "# L = " << buf << "\n";
    out << "# field sigma\n";
    write_values(out, state.sigma.values, g.nx);
    out << "# field w1\n";
    write_values(out, state.w.c1.values, g.nx);
    out << "# field w2\n";
    write_values(out, state.w.c2.values, g.nx);
    out << "# field eta\n";
    write_values(out, state.eta.values, g.nx);
    out << "# field eta_t\n";
    write_values(out, state.eta_t.values, g.nx);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw Error("cannot open for writing: " + tmp);
        f << out.str();
        if (!f.good()) throw Error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace {

struct SnapshotReader {
    std::istream& in;
    int lineno = 0;
    std::string line;

    bool next_line() {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    }

    std::string expect_header(const std::string& prefix) {
        if (!next_line() || line.rfind(prefix, 0) != 0)
            throw FormatError("snapshot: expected header '" + prefix + "' near line " +
                              std::to_string(lineno));
        return line.substr(prefix.size());
    }

    void read_block(std::vector<double>& dst, size_t count, const char* name) {
        dst.clear();
        dst.reserve(count);
        while (dst.size() < count) {
            if (!next_line())
                throw FormatError(std::string("snapshot: truncated block '") + name + "'");
            std::istringstream row(line);
            double v;
            while (row >> v) dst.push_back(v);
            if (row.fail() && !row.eof())
                throw FormatError(std::string("snapshot: bad value in block '") + name +
                                  "' at line " + std::to_string(lineno));
        }
        if (dst.size() != count)
            throw FormatError(std::string("snapshot: block '") + name + "' has wrong length");
    }
};

}  // namespace

CoupledState read_snapshot(const std::string& path, const Grid* expected_grid) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open snapshot: " + path);
    SnapshotReader r{in, 0, {}};

    r.expect_header("# fsisim snapshot");
    const double t = std::stod(r.expect_header("# t = "));
    const int nx = std::stoi(r.expect_header("# Nx = "));
    const int nz = std::stoi(r.expect_header("# Nz = "));
    const double L = std::stod(r.expect_header("# L = "));

    const Grid g = make_grid(nx, nz, L);
    if (expected_grid && !(g == *expected_grid))
        throw ShapeMismatch("snapshot grid (" + std::to_string(nx) + "x" + std::to_string(nz) +
                            ", L=" + std::to_string(L) + ") does not match the run grid");

    CoupledState s;
    s.t = t;
    s.sigma = ScalarField(g);
    s.w = VectorField(g);
    s.eta = BeamField(g);
    s.eta_t = BeamField(g);

    const size_t plane = static_cast<size_t>(g.num_nodes());
    r.expect_header("# field sigma");
    r.read_block(s.sigma.values, plane, "sigma");
    r.expect_header("# field w1");
    r.read_block(s.w.c1.values, plane, "w1");
    r.expect_header("# field w2");
    r.read_block(s.w.c2.values, plane, "w2");
    r.expect_header("# field eta");
    r.read_block(s.eta.values, static_cast<size_t>(g.nx), "eta");
    r.expect_header("# field eta_t");
    r.read_block(s.eta_t.values, static_cast<size_t>(g.nx), "eta_t");
    return s;
}

}  // namespace fsi
