#ifndef NPC_IO_HPP
#define NPC_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace npc
{
// Fixed-format float for deterministic text output.
std::string format_double(double value);

// CSV with a header row; numeric cells rendered by format_double.
void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows);

// CSV variant for pre-rendered cells (mixed text/number tables).
void write_csv_text(const std::string &path, const std::vector<std::string> &header,
                    const std::vector<std::vector<std::string>> &rows);

// 8-bit binary grayscale image, row-major, top row first.
void write_pgm(const std::string &path, int width, int height,
               const std::vector<std::uint8_t> &gray);

// FNV-1a 64-bit hash of a file's bytes as 16 hex digits; errors if unreadable.
std::string fnv1a_file_hex(const std::string &path);

std::string read_text_file(const std::string &path);
}

#endif
