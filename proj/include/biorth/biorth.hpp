#pragma once

#include "biorth/asep.hpp"
#include "biorth/bimoment.hpp"
#include "biorth/biortho.hpp"
#include "biorth/coefficients.hpp"
#include "biorth/errors.hpp"
#include "biorth/ldu.hpp"
#include "biorth/matrix.hpp"
#include "biorth/params.hpp"
#include "biorth/qseries.hpp"
#include "biorth/rational.hpp"
#include "biorth/repmat.hpp"
#include "biorth/report.hpp"
#include "biorth/wordfun.hpp"
