#pragma once

#include <Eigen/Core>

#include <array>
#include <bitset>
#include <cstddef>
#include <optional>
#include <string_view>

namespace gcproi {

/// The 37 box-score fields that enter the contribution share, in canonical
/// column order.
enum class FieldId : int {
    MIN, FG2O, FG2X, FG3O, FG3X, FTO, FTX, PF,
    STL, BLK, TOV, BLKA, PFD, POSS, SAST, DEFL,
    CHGD, AC2P, C3PT, OBOX, DBOX, OLBR, DLBR, DFGO,
    DFGX, DRV, ODIS, DDIS, TCH, APM, PASR, AST2,
    PAST, OCRB, AORC, DCRB, ADRC,
};

inline constexpr int kFieldCount = 37;

inline constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "MIN",  "FG2O", "FG2X", "FG3O", "FG3X", "FTO",  "FTX",  "PF",
    "STL",  "BLK",  "TOV",  "BLKA", "PFD",  "POSS", "SAST", "DEFL",
    "CHGD", "AC2P", "C3PT", "OBOX", "DBOX", "OLBR", "DLBR", "DFGO",
    "DFGX", "DRV",  "ODIS", "DDIS", "TCH",  "APM",  "PASR", "AST2",
    "PAST", "OCRB", "AORC", "DCRB", "ADRC",
};

constexpr int index(FieldId f) { return static_cast<int>(f); }
constexpr std::string_view name(FieldId f) { return kFieldNames[index(f)]; }

constexpr std::optional<FieldId> field_from_name(std::string_view s)
{
    for (int i = 0; i < kFieldCount; ++i) {
        if (kFieldNames[i] == s) return static_cast<FieldId>(i);
    }
    return std::nullopt;
}

/// One value per field.
template <typename Scalar>
using FieldRow = Eigen::Matrix<Scalar, 1, kFieldCount>;

/// Players by fields; row-major so each player's line is contiguous.
template <typename Scalar>
using StatMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kFieldCount, Eigen::RowMajor>;

using FieldMask = std::bitset<kFieldCount>;

/// Source statistics as published by the league's stats service. The derived
/// fields are computed from these; see derive_fields().
enum class SourceStat : int {
    MIN, FGM, FGA, FG3M, FG3A, FTM, FTA, PF,
    STL, BLK, TOV, BLKA, PFD, Poss, SAST, Deflections,
    ChargesDrawn, Contested2PT, Contested3PT, OffBoxOuts, DefBoxOuts,
    OffLooseBallsRecovered, DefLooseBallsRecovered, DFGM, DFGA, Drives,
    DistMilesOff, DistMilesDef, Touches, PassesMade, PassesReceived,
    SecondaryAssist, PotentialAssists, ContestedOREB, OREBChances,
    ContestedDREB, DREBChances,
};

inline constexpr int kSourceCount = 37;

inline constexpr std::array<std::string_view, kSourceCount> kSourceNames = {
    "MIN", "FGM", "FGA", "FG3M", "FG3A", "FTM", "FTA", "PF",
    "STL", "BLK", "TOV", "BLKA", "PFD", "Poss", "SAST", "Deflections",
    "ChargesDrawn", "Contested2PT", "Contested3PT", "OffBoxOuts", "DefBoxOuts",
    "OffLooseBallsRecovered", "DefLooseBallsRecovered", "DFGM", "DFGA", "Drives",
    "DistMilesOff", "DistMilesDef", "Touches", "PassesMade", "PassesReceived",
    "SecondaryAssist", "PotentialAssists", "ContestedOREB", "OREBChances",
    "ContestedDREB", "DREBChances",
};

constexpr int index(SourceStat s) { return static_cast<int>(s); }
constexpr std::string_view name(SourceStat s) { return kSourceNames[index(s)]; }

template <typename Scalar>
using SourceRow = Eigen::Matrix<Scalar, 1, kSourceCount>;

} // namespace gcproi
