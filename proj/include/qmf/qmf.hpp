// Umbrella header.
#pragma once

#include "qmf/exactnum.hpp"
#include "qmf/quatlat.hpp"
#include "qmf/tmat.hpp"
#include "qmf/series.hpp"
#include "qmf/fexp.hpp"
#include "qmf/forms.hpp"
#include "qmf/congr.hpp"
