#pragma once

#include "sra/agreement.hpp"
#include "sra/censored.hpp"
#include "sra/errors.hpp"
#include "sra/ingest.hpp"
#include "sra/nullref.hpp"
#include "sra/overlap.hpp"
#include "sra/parallel.hpp"
#include "sra/rng.hpp"
#include "sra/types.hpp"
