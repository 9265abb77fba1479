#include "turbmix/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace turbmix {

namespace {
static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

constexpr char kMagic[5] = {'T', 'S', 'P', 'F', '1'};

template <typename T>
void write_raw(std::ostream& os, T value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is) throw std::runtime_error("truncated field snapshot");
    return value;
}
}  // namespace

void write_field_snapshot(std::ostream& os, const VectorField& field) {
    const FieldGrid& grid = field.grid;
    grid.validate();
    os.write(kMagic, sizeof(kMagic));
    write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(grid.dimension));
    for (int a = 0; a < grid.dimension; ++a)
        write_raw<std::uint64_t>(os, static_cast<std::uint64_t>(grid.n[a]));
    for (int a = 0; a < grid.dimension; ++a) write_raw<double>(os, grid.h[a]);
    write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(field.components.size()));
    const Eigen::Index count = grid.node_count();
    for (const auto& comp : field.components) {
        if (comp.size() != count)
            throw std::invalid_argument("component size does not match grid");
        os.write(reinterpret_cast<const char*>(comp.data()),
                 static_cast<std::streamsize>(count * sizeof(double)));
    }
    if (!os) throw std::runtime_error("field snapshot write failed");
}

void write_field_snapshot(const std::string& path, const VectorField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field_snapshot(os, field);
}

VectorField read_field_snapshot(std::istream& is) {
    char magic[5];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a TSPF1 field snapshot");
    VectorField field;
    field.grid.dimension = static_cast<int>(read_raw<std::uint32_t>(is));
    if (field.grid.dimension != 2 && field.grid.dimension != 3)
        throw std::runtime_error("snapshot has unsupported dimension");
    for (int a = 0; a < field.grid.dimension; ++a)
        field.grid.n[a] = static_cast<Eigen::Index>(read_raw<std::uint64_t>(is));
    for (int a = 0; a < field.grid.dimension; ++a)
        field.grid.h[a] = read_raw<double>(is);
    field.grid.validate();
    const auto n_comp = read_raw<std::uint32_t>(is);
    const Eigen::Index count = field.grid.node_count();
    for (std::uint32_t c = 0; c < n_comp; ++c) {
        Eigen::ArrayXd comp(count);
        is.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(count * sizeof(double)));
        if (!is) throw std::runtime_error("truncated field snapshot");
        field.components.push_back(std::move(comp));
    }
    return field;
}

VectorField read_field_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_field_snapshot(is);
}

void write_field_text(std::ostream& os, const VectorField& field) {
    const FieldGrid& grid = field.grid;
    grid.validate();
    os.precision(17);
    os << "# turbmix field dimension=" << grid.dimension << " components="
       << field.components.size() << "\n# columns: coordinates then components\n";
    const Eigen::Index count = grid.node_count();
    for (Eigen::Index idx = 0; idx < count; ++idx) {
        Eigen::Index coords[3] = {0, 0, 0};
        Eigen::Index rest = idx;
        for (int a = grid.dimension - 1; a >= 0; --a) {
            coords[a] = rest % grid.n[a];
            rest /= grid.n[a];
        }
        for (int a = 0; a < grid.dimension; ++a)
            os << static_cast<double>(coords[a]) * grid.h[a] << ' ';
        for (const auto& comp : field.components) os << comp[idx] << ' ';
        os << "\n";
    }
}

}  // namespace turbmix
