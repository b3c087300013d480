#pragma once

// Hand-written reference algorithms in the display syntax. Used as expected
// outputs for synthesis and as known-good inputs for the interpreter.

namespace sortsynth::ref {

inline constexpr const char* kInsertSort =
    "Sort[nil] = nil\n"
    "Sort[cons(a,U)] = Insert[a, Sort[U]]\n";

inline constexpr const char* kInsert =
    "Insert[a, nil] = cons(a,nil)\n"
    "Insert[a, cons(b,U)] = cons(a,cons(b,U)) | leq(a,b)\n"
    "Insert[a, cons(b,U)] = cons(b,Insert[a, U]) | lt(b,a)\n";

inline constexpr const char* kQuickSort =
    "Sort[nil] = nil\n"
    "Sort[cons(a,U)] = Conc[Sort[SmEq[a, U]], cons(a,Sort[Bigger[a, U]])]\n";

inline constexpr const char* kSmEq =
    "SmEq[a, nil] = nil\n"
    "SmEq[a, cons(b,U)] = cons(b,SmEq[a, U]) | leq(b,a)\n"
    "SmEq[a, cons(b,U)] = SmEq[a, U] | lt(a,b)\n";

inline constexpr const char* kBigger =
    "Bigger[a, nil] = nil\n"
    "Bigger[a, cons(b,U)] = Bigger[a, U] | leq(b,a)\n"
    "Bigger[a, cons(b,U)] = cons(b,Bigger[a, U]) | lt(a,b)\n";

inline constexpr const char* kConc =
    "Conc[nil, V] = V\n"
    "Conc[cons(a,U), V] = cons(a,Conc[U, V])\n";

inline constexpr const char* kMinSort =
    "Sort[nil] = nil\n"
    "Sort[U] = cons(min[U],Sort[Trim[U]]) | neq(U,nil)\n";

inline constexpr const char* kMin = "min[cons(a,U)] = minA[a, U]\n";
inline constexpr const char* kTrim = "Trim[cons(a,U)] = TrimA[a, U]\n";

inline constexpr const char* kMinA =
    "minA[a, nil] = a\n"
    "minA[a, cons(b,U)] = minA[a, U] | leq(a,b)\n"
    "minA[a, cons(b,U)] = minA[b, U] | lt(b,a)\n";

inline constexpr const char* kTrimA =
    "TrimA[a, nil] = nil\n"
    "TrimA[a, cons(b,U)] = cons(b,TrimA[a, U]) | leq(a,b)\n"
    "TrimA[a, cons(b,U)] = cons(a,TrimA[b, U]) | lt(b,a)\n";

inline constexpr const char* kMergeSort =
    "Sort[nil] = nil\n"
    "Sort[cons(a,nil)] = cons(a,nil)\n"
    "Sort[Conc(U,V)] = Merge[Sort[U], Sort[V]]\n";

inline constexpr const char* kMergeInsert1 =
    "Merge[nil, V] = V\n"
    "Merge[cons(a,U), V] = Insert[a, Merge[U, V]]\n";

inline constexpr const char* kMergeInsert2 =
    "Merge[nil, V] = V\n"
    "Merge[cons(a,U), V] = Merge[U, Insert[a, V]]\n";

inline constexpr const char* kMergeClassic =
    "Merge[nil, V] = V\n"
    "Merge[cons(a,U), nil] = cons(a,U)\n"
    "Merge[cons(a,U), cons(b,V)] = cons(a,Merge[U, cons(b,V)]) | leq(a,b)\n"
    "Merge[cons(a,U), cons(b,V)] = cons(b,Merge[cons(a,U), V]) | lt(b,a)\n";

// Non-terminating variant: the recursive call's first argument is not smaller.
inline constexpr const char* kMergeLooping =
    "Merge[nil, V] = V\n"
    "Merge[cons(a,U), V] = Merge[Insert[a, U], V]\n";

}  // namespace sortsynth::ref
