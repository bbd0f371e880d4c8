package com.example.app;

import java.io.IOException;
import okhttp3.Call;
import okhttp3.Callback;
import okhttp3.OkHttpClient;
import okhttp3.Request;
import okhttp3.Response;
import okhttp3.ResponseBody;

public class Main implements Callback {
    private final OkHttpClient client = new OkHttpClient();
    private final Net net;

    public Main(Net net) {
        this.net = net;
    }

    void fetch(Request request) {
        if (net.online()) {
            client.newCall(request).enqueue(this);
        }
    }

    @Override
    public void onResponse(Call call, Response response) throws IOException {
        if (!response.isSuccessful()) {
            return;
        }
        ResponseBody body = response.body();
        if (body == null) {
            return;
        }
        show(body.string());
    }

    @Override
    public void onFailure(Call call, IOException e) {
        show(e.getMessage());
    }

    void show(String text) {
        System.out.println(text);
    }
}
