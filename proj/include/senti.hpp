#pragma once

#include "senti/class_weights.hpp"
#include "senti/classifier.hpp"
#include "senti/corpus.hpp"
#include "senti/csv.hpp"
#include "senti/error.hpp"
#include "senti/features.hpp"
#include "senti/label.hpp"
#include "senti/logreg.hpp"
#include "senti/metrics.hpp"
#include "senti/naive_bayes.hpp"
#include "senti/optimize.hpp"
#include "senti/persistence.hpp"
#include "senti/pipeline.hpp"
#include "senti/random.hpp"
#include "senti/sparse.hpp"
#include "senti/svm.hpp"
#include "senti/unicode.hpp"
