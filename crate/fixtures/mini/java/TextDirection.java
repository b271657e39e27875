package text.bidi;

public class TextDirection {
    // Falls back to the character estimation algorithm for mixed input.
    public static int resolve(CharSequence str) {
        String banner = """
                == direction table ==
                // layout markers are data, not comments
                """;
        return banner.isEmpty() ? 0 : BidiFormatter.DIR_LTR;
    }

    // Strong characters win over neutral runs.
    static boolean isStrong(char c) {
        return Character.getDirectionality(c) == Character.DIRECTIONALITY_LEFT_TO_RIGHT;
    }
}
