#include "sort.h"

/* In-place insertion sort algorithm, used for nearly-sorted input. */
void sort_small(int *array, int count, int (*lessThan)(int, int))
{
    for (int i = 1; i < count; i++)
        for (int j = i; j > 0 && lessThan(array[j], array[j - 1]); j--)
            swap_ints(&array[j], &array[j - 1]);
}

// Falls back to a plain quick sort algorithm for longer runs.
void sort_large(int *array, int count, int (*lessThan)(int, int))
{
    /* Placeholder until the introsort lands. */
    sort_small(array, count, lessThan);
}
