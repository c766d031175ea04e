class Evaluator {
    static int[][] toIntArray(Object_int node) {
        return new int[0][0];
    }

    static float[][] toFloatArray(Object_float node) {
        return new float[0][0];
    }
}
