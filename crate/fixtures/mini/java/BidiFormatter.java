package text.bidi;

public final class BidiFormatter {
    // The reason for this method name, as opposed to getFirstStrongDir(), is that
    // "first strong" is a commonly used description of Unicode's estimation algorithm
    public int getEstimatedDir(CharSequence str) {
        return BidiUtils.firstStrong(str);
    }

    // Direction constants match the printing order.
    public static final int DIR_LTR = 1;
    public static final int DIR_RTL = -1;
}
