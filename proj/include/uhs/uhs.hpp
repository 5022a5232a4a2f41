#pragma once

#include "uhs/analysis.hpp"
#include "uhs/common.hpp"
#include "uhs/context.hpp"
#include "uhs/cyclotomic.hpp"
#include "uhs/debruijn.hpp"
#include "uhs/density.hpp"
#include "uhs/forbidden.hpp"
#include "uhs/kmer_set.hpp"
#include "uhs/long_path.hpp"
#include "uhs/mds.hpp"
#include "uhs/mykkeltveit.hpp"
#include "uhs/scheme.hpp"
