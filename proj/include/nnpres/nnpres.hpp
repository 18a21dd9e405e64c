#pragma once

#include "nnpres/checkers.hpp"
#include "nnpres/divdiff.hpp"
#include "nnpres/errors.hpp"
#include "nnpres/function.hpp"
#include "nnpres/io.hpp"
#include "nnpres/matfun.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/niep.hpp"
#include "nnpres/rational.hpp"
#include "nnpres/rng.hpp"
#include "nnpres/spectra.hpp"
#include "nnpres/structmat.hpp"
#include "nnpres/taylor.hpp"
