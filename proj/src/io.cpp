#include "npc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace npc
{
std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace
{
std::ofstream open_for_write(const std::string &path, std::ios_base::openmode mode)
{
    std::ofstream out(path, mode);
    if (!out)
    {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    return out;
}

void write_row(std::ofstream &out, const std::vector<std::string> &cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i != 0)
        {
            out << ',';
        }
        out << cells[i];
    }
    out << '\n';
}
}

void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows)
{
    std::ofstream out = open_for_write(path, std::ios_base::out);
    write_row(out, header);
    for (const std::vector<double> &row : rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i != 0)
            {
                out << ',';
            }
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out)
    {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_csv_text(const std::string &path, const std::vector<std::string> &header,
                    const std::vector<std::vector<std::string>> &rows)
{
    std::ofstream out = open_for_write(path, std::ios_base::out);
    write_row(out, header);
    for (const std::vector<std::string> &row : rows)
    {
        write_row(out, row);
    }
    if (!out)
    {
        throw std::runtime_error("write failed: " + path);
    }
}

void write_pgm(const std::string &path, int width, int height,
               const std::vector<std::uint8_t> &gray)
{
    if (width <= 0 || height <= 0 ||
        gray.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    {
        throw std::invalid_argument("image dimensions do not match the pixel buffer");
    }
    std::ofstream out = open_for_write(path, std::ios_base::out | std::ios_base::binary);
    out << "P5\n" << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char *>(gray.data()), static_cast<std::streamsize>(gray.size()));
    if (!out)
    {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string fnv1a_file_hex(const std::string &path)
{
    std::ifstream in(path, std::ios_base::in | std::ios_base::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open for hashing: " + path);
    }
    std::uint64_t hash = 14695981039346656037ull;
    char chunk[4096];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0)
    {
        for (std::streamsize i = 0; i < in.gcount(); ++i)
        {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 1099511628211ull;
        }
        if (!in)
        {
            break;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios_base::in | std::ios_base::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}
}
