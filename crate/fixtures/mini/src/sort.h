#ifndef SORT_H
#define SORT_H

// Sorts the array of size count using comparator lessThan using an Insertion
// Sort algorithm.
void sort_small(int *array, int count, int (*lessThan)(int, int));

// Swap helper shared by the sorters.
static inline void swap_ints(int *a, int *b)
{
    int t = *a;
    *a = *b;
    *b = t;
}

#endif
