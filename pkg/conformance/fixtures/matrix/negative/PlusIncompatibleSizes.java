class PlusIncompatibleSizes {
    public static void main(String[] args) {
        Size128 size128 = new Size128();
        Size256 size256 = new Size256();

        FltMat<Size128, Size128> matrix1 = MatrixBuilder.randFlt().row(size128).col(size128);
        IntMat<Size128, Size256> matrix2 = MatrixBuilder.randInt().row(size128).col(size256);

        matrix1.plus(matrix2); // expect-error
    }
}
