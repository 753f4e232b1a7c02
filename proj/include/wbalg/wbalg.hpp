#pragma once

#include "wbalg/errors.hpp"
#include "wbalg/ideal_units.hpp"
#include "wbalg/lowrank.hpp"
#include "wbalg/matrix_units.hpp"
#include "wbalg/partitions.hpp"
#include "wbalg/spectra.hpp"
#include "wbalg/symgroup.hpp"
#include "wbalg/tensorspace.hpp"
